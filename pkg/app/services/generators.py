"""Seeded random NSEMs and PNSEMs for sweeps and property checks"""
import random
from dataclasses import asdict, dataclass
from fractions import Fraction

from app.models.nsem import EquationTable, Model
from app.models.pnsem import ConditionalTable, PModel
from app.models.signature import CausalGraph, Signature


@dataclass(frozen=True)
class RandomModelConfig:
    exogenous: int = 1
    endogenous: int = 3
    max_range: int = 2
    max_parents: int = 2
    nondeterminism: float = 0.5

    def __post_init__(self):
        if self.exogenous < 0 or self.endogenous < 1 or self.max_range < 1 or self.max_parents < 0:
            raise ValueError(f"Invalid random model config: {asdict(self)}")
        if not 0 <= self.nondeterminism <= 1:
            raise ValueError(f"Nondeterminism rate {self.nondeterminism} is outside [0, 1]")

    @classmethod
    def from_app_config(cls, config):
        """Upper bounds taken from the RANDOM_* settings of a Flask config"""
        return cls(
            exogenous=config['RANDOM_MAX_EXOGENOUS'],
            endogenous=config['RANDOM_MAX_ENDOGENOUS'],
            max_range=config['RANDOM_MAX_RANGE'],
            max_parents=config['RANDOM_MAX_PARENTS'],
            nondeterminism=config['RANDOM_NONDETERMINISM'],
        )

    def to_dict(self):
        return asdict(self)


def _skeleton(rng, config):
    exogenous = [f'U{i}' for i in range(config.exogenous)]
    endogenous = [f'X{i}' for i in range(config.endogenous)]
    ranges = {}
    for name in exogenous + endogenous:
        size = rng.randint(min(2, config.max_range), config.max_range)
        ranges[name] = list(range(size))
    edges = set()
    for i, child in enumerate(endogenous):
        candidates = exogenous + endogenous[:i]
        k = rng.randint(0, min(config.max_parents, len(candidates)))
        edges.update((parent, child) for parent in rng.sample(candidates, k))
    signature = Signature(exogenous, endogenous, ranges)
    return signature, CausalGraph(signature.variables, edges), endogenous


def random_model(seed, config=None):
    """A valid total acyclic NSEM, determined entirely by `seed` and `config`.

    Each endogenous variable draws its parents among the exogenous variables and
    the endogenous variables generated before it; each row is a random singleton,
    or with probability `config.nondeterminism` a random subset of two or more values.
    """
    config = config or RandomModelConfig()
    rng = random.Random(seed)
    signature, graph, endogenous = _skeleton(rng, config)
    equations = {}
    for child in endogenous:
        parents = graph.parents(child)
        values = signature.ranges[child]
        rows = {}
        for assignment in signature.assignments(parents):
            key = tuple(assignment[p] for p in parents)
            if len(values) > 1 and rng.random() < config.nondeterminism:
                rows[key] = rng.sample(values, rng.randint(2, len(values)))
            else:
                rows[key] = [rng.choice(values)]
        equations[child] = EquationTable(child, parents, rows)
    return Model(signature, graph, equations)


def _random_distribution(rng, values, max_weight):
    weights = {value: rng.randint(1, max_weight) for value in values}
    total = sum(weights.values())
    return {value: Fraction(w, total) for value, w in weights.items()}


def random_pmodel(seed, config=None, *, max_weight=9):
    """A PNSEM with random positive rational rows on the supports of `random_model(seed, config)`"""
    model = random_model(seed, config)
    rng = random.Random(f'pmodel-{seed}')
    sig = model.signature
    tables = {}
    for name in sig.exogenous:
        tables[name] = ConditionalTable(name, (), {(): _random_distribution(rng, sig.ranges[name], max_weight)})
    for name, equation in model.equations.items():
        rows = {key: _random_distribution(rng, sig.order_values(name, values), max_weight)
                for key, values in equation.rows.items()}
        tables[name] = ConditionalTable(name, equation.parents, rows)
    return PModel(sig, model.graph, tables)
