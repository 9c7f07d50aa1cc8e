"""Fixed model corpora for the exhaustive and seeded agreement checks"""
import random
from itertools import combinations, permutations, product

from app.models import And, Atom, CausalGraph, Model, Not, Or, Signature
from app.services.axioms import interventions
from app.services.generators import RandomModelConfig, random_model

BINARY = (0, 1)
VALUE_SETS = ({0}, {1}, {0, 1})

SEEDED_BOUNDS = RandomModelConfig(exogenous=1, endogenous=4, max_range=3, max_parents=2)


def _acyclic_edge_sets(sig):
    possible = [(u, v) for u in sig.exogenous for v in sig.endogenous]
    possible += list(permutations(sig.endogenous, 2))
    for k in range(len(possible) + 1):
        for edges in combinations(possible, k):
            if CausalGraph(sig.variables, edges).is_acyclic():
                yield edges


def exhaustive_models():
    """Every total acyclic NSEM over binary ranges with at most one exogenous and two endogenous variables"""
    for exogenous, endogenous in product(([], ['U']), (['A'], ['A', 'B'])):
        sig = Signature(exogenous, endogenous, {n: BINARY for n in exogenous + endogenous})
        for edges in _acyclic_edge_sets(sig):
            graph = CausalGraph(sig.variables, edges)
            slots = [(name, key) for name in endogenous
                     for key in product(BINARY, repeat=len(graph.parents(name)))]
            for choice in product(VALUE_SETS, repeat=len(slots)):
                rows = {name: {} for name in endogenous}
                for (name, key), values in zip(slots, choice):
                    rows[name][key] = values
                yield Model.from_rows(sig, edges, rows)


def seeded_models(count=500, seed=0, bounds=SEEDED_BOUNDS):
    """`count` random models whose shapes vary up to `bounds`, reproducible from `seed`"""
    rng = random.Random(seed)
    for _ in range(count):
        shape = RandomModelConfig(exogenous=rng.randint(0, bounds.exogenous),
                                  endogenous=rng.randint(1, bounds.endogenous),
                                  max_range=bounds.max_range, max_parents=bounds.max_parents,
                                  nondeterminism=rng.choice((0.0, 0.5, 1.0)))
        yield random_model(rng.randrange(2 ** 32), shape)


def sample(rng, items, k):
    """At most `k` of `items`, keeping their order; the first item is always kept"""
    items = list(items)
    if len(items) <= k:
        return items
    rest = sorted(rng.sample(range(1, len(items)), k - 1))
    return [items[0]] + [items[i] for i in rest]


def atom_pool(sig):
    return [Atom(n, v) for n in sig.endogenous for v in sig.ranges[n]]


def literal_pool(sig):
    atoms = atom_pool(sig)
    return atoms + [Not(a) for a in atoms]


def formulas_up_to_depth(atoms, depth):
    """Every basic formula with at most `depth` nested connectives over `atoms`"""
    pool = list(atoms)
    for _ in range(depth):
        grown = pool + [Not(f) for f in pool]
        grown += [op for f, g in combinations(pool, 2) for op in (And((f, g)), Or((f, g)))]
        pool = list(dict.fromkeys(grown))
    return pool


def every_intervention(sig):
    return list(interventions(sig))
