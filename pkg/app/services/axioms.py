"""Axiom schemas for nondeterministic causal models and counterexample search.

Each schema instantiates to concrete causal formulas over a signature; a
check evaluates every instance at every world (counterfactual mode) or every
context (interventionist mode) of a model and stops at the first failure.
"""
import logging
import random
from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import combinations, permutations, product
from typing import Callable

from app.errors import SideConditionError
from app.models.formula import (Atom, Box, Diamond, Formula, Intervention, Not, Top, conj, disj, is_basic,
                                walk)
from app.services.generators import RandomModelConfig, random_model
from app.services.semantics import Evaluator, Level, Setting
from app.services.solver import contexts, enumerate_solutions
from app.utils.formulas import desugar, eval_basic
from app.utils.parser import format_formula
from app.utils.reference_models import REFERENCE_MODELS

logger = logging.getLogger(__name__)


class Mode(str, Enum):
    COUNTERFACTUAL = 'cf'
    INTERVENTIONIST = 'iv'


BOTH_MODES = frozenset(Mode)

# exponential expansions are only instantiated on signatures this small
MAX_BOUNDED_VARIABLES = 4
MAX_BOUNDED_RANGE = 3


@dataclass(frozen=True)
class AxiomSchema:
    id: str
    name: str
    sound_in: frozenset
    build: Callable
    candidates: Callable
    bounded: bool = False

    def instantiate(self, sig, params):
        return instantiate(self, sig, params)

    def to_dict(self):
        return {'id': self.id, 'name': self.name,
                'sound_in': sorted(mode.value for mode in self.sound_in), 'bounded': self.bounded}


def _require(condition, message):
    if not condition:
        raise SideConditionError(message)


def _check_intervention(sig, iv):
    _require(isinstance(iv, Intervention), f"Expected an intervention, got {iv!r}")
    for var, value in iv.pairs:
        _require(sig.is_endogenous(var), f"'{var}' is not an endogenous variable")
        _require(value in sig.ranges[var], f"{value!r} is not in the range of '{var}'")


def _check_basic(sig, phi):
    _require(isinstance(phi, Formula) and is_basic(phi), f"Expected a basic formula, got {phi!r}")
    for node in walk(phi):
        if isinstance(node, Atom):
            _require(sig.is_endogenous(node.var), f"'{node.var}' is not an endogenous variable")
            _require(node.value in sig.ranges[node.var], f"{node.value!r} is not in the range of '{node.var}'")


def _check_value(sig, var, value):
    _require(sig.is_endogenous(var), f"'{var}' is not an endogenous variable")
    _require(value in sig.ranges[var], f"{value!r} is not in the range of '{var}'")


def _within_bound(sig):
    return (len(sig.endogenous) <= MAX_BOUNDED_VARIABLES
            and all(len(sig.ranges[n]) <= MAX_BOUNDED_RANGE for n in sig.endogenous))


def _is_tautology(sig, phi):
    return all(eval_basic(state, phi) for state in sig.assignments(sig.endogenous))


def _atoms(assignment):
    return conj(*(Atom(var, value) for var, value in assignment))


def interventions(sig, variables=None):
    """Every point intervention over subsets of `variables`, smallest first, canonical order"""
    names = sig.endogenous if variables is None else tuple(sorted(variables))
    for size in range(len(names) + 1):
        for chosen in combinations(names, size):
            for values in product(*(sig.ranges[n] for n in chosen)):
                yield Intervention(tuple(zip(chosen, values)))


def basic_pool(sig):
    """true, then every atom, then every negated atom"""
    atoms = [Atom(n, v) for n in sig.endogenous for v in sig.ranges[n]]
    return [Top()] + atoms + [Not(a) for a in atoms]


def leads_to(sig, y, z, *, form='box'):
    """Y ~> Z: some intervention on the other variables gives Z a value that setting Y changes"""
    modal = Box if form == 'box' else Diamond
    others = [n for n in sig.endogenous if n not in (y, z)]
    disjuncts = []
    for iv in interventions(sig, others):
        for y_value in sig.ranges[y]:
            extended = iv.extended(y, y_value)
            for z_value, z_other in permutations(sig.ranges[z], 2):
                disjuncts.append(conj(modal(iv, Atom(z, z_value)), modal(extended, Atom(z, z_other))))
    return disj(*disjuncts)


# -- instantiators ------------------------------------------------------------

TAUTOLOGIES = {
    'excluded_middle': (1, lambda p, q: p | ~p),
    'double_negation': (1, lambda p, q: ~~p >> p),
    'simplification': (2, lambda p, q: (p & q) >> p),
    'contraposition': (2, lambda p, q: (p >> q) >> (~q >> ~p)),
}


def _check_causal(sig, f):
    _require(isinstance(f, (Box, Diamond)), f"Expected a basic causal formula, got {f!r}")
    _check_intervention(sig, f.intervention)
    _check_basic(sig, f.body)


def _build_d0(sig, p):
    _require(p['template'] in TAUTOLOGIES, f"Unknown tautology template '{p['template']}'")
    arity, template = TAUTOLOGIES[p['template']]
    _check_causal(sig, p['psi'])
    chi = p.get('chi')
    if arity == 2:
        _check_causal(sig, chi)
    return template(p['psi'], chi)


def _build_d1(sig, p):
    _check_intervention(sig, p['iv'])
    var, x, x2 = p['var'], p['x'], p['x2']
    _check_value(sig, var, x)
    _check_value(sig, var, x2)
    _require(x != x2, f"D1 needs two different values of '{var}'")
    return Box(p['iv'], Atom(var, x) >> Not(Atom(var, x2)))


def _build_d2(sig, p):
    _check_intervention(sig, p['iv'])
    var = p['var']
    _require(sig.is_endogenous(var), f"'{var}' is not an endogenous variable")
    return Box(p['iv'], disj(*(Atom(var, v) for v in sig.ranges[var])))


def _composition(modal):
    def build(sig, p):
        iv, var, value, phi = p['iv'], p['var'], p['value'], p['phi']
        _check_intervention(sig, iv)
        _check_value(sig, var, value)
        _check_basic(sig, phi)
        _require(var not in iv.variables, f"'{var}' is already intervened on")
        return modal(iv, conj(Atom(var, value), phi)) >> modal(iv.extended(var, value), phi)
    return build


def _build_d4(sig, p):
    _check_intervention(sig, p['iv'])
    return Box(p['iv'], _atoms(p['iv'].pairs))


def _build_d5(sig, p):
    _require(_within_bound(sig), "D5 is only instantiated on small signatures")
    iv, w, w_value, y, y_value = p['iv'], p['w'], p['w_value'], p['y'], p['y_value']
    _check_intervention(sig, iv)
    _check_value(sig, w, w_value)
    _check_value(sig, y, y_value)
    _require(w != y, "D5 needs W and Y to differ")
    _require(w not in iv.variables and y not in iv.variables, "D5 needs W and Y outside the intervention")
    rest = [n for n in sig.endogenous if n not in iv.variables and n not in (w, y)]
    z = dict(p['z'])
    _require(sorted(z) == rest, f"D5 needs values for exactly {rest}")
    for var, value in z.items():
        _check_value(sig, var, value)
    z_atoms = sorted(z.items())
    first = Diamond(iv.extended(y, y_value), _atoms([(w, w_value)] + z_atoms))
    second = Diamond(iv.extended(w, w_value), _atoms([(y, y_value)] + z_atoms))
    return conj(first, second) >> Diamond(iv, _atoms([(w, w_value), (y, y_value)] + z_atoms))


def _recursiveness(form):
    def build(sig, p):
        _require(_within_bound(sig), "D6 is only instantiated on small signatures")
        chain = tuple(p['chain'])
        _require(len(chain) >= 2, "D6 needs a chain of at least two variables")
        _require(len(set(chain)) == len(chain), "D6 needs distinct variables along the chain")
        for var in chain:
            _require(sig.is_endogenous(var), f"'{var}' is not an endogenous variable")
        steps = [leads_to(sig, a, b, form=form) for a, b in zip(chain, chain[1:])]
        return conj(*steps) >> Not(leads_to(sig, chain[-1], chain[0], form=form))
    return build


def _build_d7(sig, p):
    iv, phi, psi = p['iv'], p['phi'], p['psi']
    _check_intervention(sig, iv)
    _check_basic(sig, phi)
    _check_basic(sig, psi)
    return conj(Box(iv, phi), Box(iv, phi >> psi)) >> Box(iv, psi)


def _build_d8(sig, p):
    _check_intervention(sig, p['iv'])
    _check_basic(sig, p['phi'])
    _require(_is_tautology(sig, p['phi']), f"D8 needs a propositional tautology, got {format_formula(p['phi'])}")
    return Box(p['iv'], p['phi'])


def _build_d9(sig, p):
    iv, phi = p['iv'], p['phi']
    _check_intervention(sig, iv)
    _check_basic(sig, phi)
    missing = set(sig.endogenous) - set(iv.variables)
    _require(len(missing) <= 1, "D9 needs an intervention on all of V or all but one variable")
    return conj(Diamond(iv, Top()), Diamond(iv, phi) >> Box(iv, phi))


def _build_d10a(sig, p):
    _check_intervention(sig, p['iv'])
    return Diamond(p['iv'], Top())


def _build_d10b(sig, p):
    _check_intervention(sig, p['iv'])
    _check_basic(sig, p['phi'])
    return Diamond(p['iv'], p['phi']) >> Box(p['iv'], p['phi'])


def _build_d10c(sig, p):
    _check_basic(sig, p['phi'])
    empty = Intervention()
    return Diamond(empty, p['phi']) >> Box(empty, p['phi'])


# -- canonical parameter generators --------------------------------------------
#
# Candidates are interleaved across interventions, one per intervention per round.

def _spread(streams):
    """Round-robin over candidate streams until all of them are exhausted"""
    active = deque(iter(s) for s in streams)
    while active:
        stream = active.popleft()
        try:
            item = next(stream)
        except StopIteration:
            continue
        yield item
        active.append(stream)


def _per_intervention(sig, candidates_for, *, keep=None):
    return _spread(candidates_for(iv) for iv in interventions(sig) if keep is None or keep(iv))


def _causal_pool(sig):
    for iv in interventions(sig):
        for phi in basic_pool(sig):
            yield Box(iv, phi)
            yield Diamond(iv, phi)


def _candidates_d0(sig):
    def for_iv(iv):
        for phi in basic_pool(sig):
            for psi in (Box(iv, phi), Diamond(iv, phi)):
                for name, (arity, _) in TAUTOLOGIES.items():
                    if arity == 1:
                        yield {'template': name, 'psi': psi}
                    else:
                        for chi in _causal_pool(sig):
                            yield {'template': name, 'psi': psi, 'chi': chi}

    return _per_intervention(sig, for_iv)


def _candidates_d1(sig):
    def for_iv(iv):
        for var in sig.endogenous:
            for x, x2 in permutations(sig.ranges[var], 2):
                yield {'iv': iv, 'var': var, 'x': x, 'x2': x2}

    return _per_intervention(sig, for_iv)


def _candidates_d2(sig):
    return _per_intervention(sig, lambda iv: ({'iv': iv, 'var': var} for var in sig.endogenous))


def _candidates_composition(sig):
    def for_iv(iv):
        for var in sig.endogenous:
            if var in iv.variables:
                continue
            for value in sig.ranges[var]:
                for phi in basic_pool(sig):
                    yield {'iv': iv, 'var': var, 'value': value, 'phi': phi}

    return _per_intervention(sig, for_iv)


def _candidates_iv(sig):
    for iv in interventions(sig):
        yield {'iv': iv}


def _candidates_d5(sig):
    def for_iv(iv):
        free = [n for n in sig.endogenous if n not in iv.variables]
        for w, y in permutations(free, 2):
            rest = [n for n in free if n not in (w, y)]
            for w_value, y_value in product(sig.ranges[w], sig.ranges[y]):
                for z_values in product(*(sig.ranges[n] for n in rest)):
                    yield {'iv': iv, 'w': w, 'w_value': w_value, 'y': y, 'y_value': y_value,
                           'z': dict(zip(rest, z_values))}

    return _per_intervention(sig, for_iv)


def _candidates_d6(sig):
    for length in range(2, len(sig.endogenous) + 1):
        for chain in permutations(sig.endogenous, length):
            yield {'chain': chain}


def _candidates_d7(sig):
    pool = basic_pool(sig)
    return _per_intervention(sig, lambda iv: ({'iv': iv, 'phi': phi, 'psi': psi}
                                              for phi in pool for psi in pool))


def _tautology_pool(sig):
    yield Top()
    for var in sig.endogenous:
        yield disj(*(Atom(var, v) for v in sig.ranges[var]))
        for value in sig.ranges[var]:
            yield Atom(var, value) | Not(Atom(var, value))
            yield Atom(var, value) >> Atom(var, value)


def _candidates_d8(sig):
    return _per_intervention(sig, lambda iv: ({'iv': iv, 'phi': phi} for phi in _tautology_pool(sig)))


def _candidates_iv_phi(sig, *, near_total=False):
    n = len(sig.endogenous)
    keep = (lambda iv: len(iv) >= n - 1) if near_total else None
    return _per_intervention(sig, lambda iv: ({'iv': iv, 'phi': phi} for phi in basic_pool(sig)), keep=keep)


def _candidates_d10c(sig):
    for phi in basic_pool(sig):
        yield {'phi': phi}


CF_ONLY = frozenset({Mode.COUNTERFACTUAL})
NEITHER = frozenset()

SCHEMAS = {schema.id: schema for schema in (
    AxiomSchema('D0', 'propositional tautologies', BOTH_MODES, _build_d0, _candidates_d0),
    AxiomSchema('D1', 'functionality', BOTH_MODES, _build_d1, _candidates_d1),
    AxiomSchema('D2', 'definiteness', BOTH_MODES, _build_d2, _candidates_d2),
    AxiomSchema('D3a', 'weak composition', BOTH_MODES, _composition(Diamond), _candidates_composition),
    AxiomSchema('D3b', 'strong composition', BOTH_MODES, _composition(Box), _candidates_composition),
    AxiomSchema('D4', 'effectiveness', BOTH_MODES, _build_d4, _candidates_iv),
    AxiomSchema('D5', 'reversibility', BOTH_MODES, _build_d5, _candidates_d5, bounded=True),
    AxiomSchema('D6', 'recursiveness', BOTH_MODES, _recursiveness('box'), _candidates_d6, bounded=True),
    AxiomSchema('D6dia', 'recursiveness with diamond leads-to', NEITHER, _recursiveness('diamond'),
                _candidates_d6, bounded=True),
    AxiomSchema('D7', 'distribution', BOTH_MODES, _build_d7, _candidates_d7),
    AxiomSchema('D8', 'generalization', BOTH_MODES, _build_d8, _candidates_d8),
    AxiomSchema('D9', 'unique outcomes for V and V minus one variable', NEITHER, _build_d9,
                lambda sig: _candidates_iv_phi(sig, near_total=True)),
    AxiomSchema('D10a', 'at least one outcome', BOTH_MODES, _build_d10a, _candidates_iv),
    AxiomSchema('D10b', 'at most one outcome', NEITHER, _build_d10b, _candidates_iv_phi),
    AxiomSchema('D10c', 'at most one actual outcome', CF_ONLY, _build_d10c, _candidates_d10c),
)}

SOUND_SYSTEM = ('D0', 'D1', 'D2', 'D3b', 'D4', 'D5', 'D6', 'D7', 'D8', 'D10a')


def get_schema(schema):
    if isinstance(schema, AxiomSchema):
        return schema
    try:
        return SCHEMAS[schema]
    except KeyError:
        raise SideConditionError(f"Unknown axiom schema '{schema}'; known: {', '.join(SCHEMAS)}")


def instantiate(schema, sig, params):
    """The causal formula for one choice of schema parameters over `sig`"""
    schema = get_schema(schema)
    try:
        return schema.build(sig, params)
    except KeyError as e:
        raise SideConditionError(f"{schema.id} is missing parameter {e.args[0]!r}")


# -- checking -------------------------------------------------------------------

def _render_param(value):
    if isinstance(value, Intervention):
        return f'[{value.render()}]'
    if isinstance(value, Formula):
        return format_formula(value)
    if isinstance(value, tuple):
        return list(value)
    return value


@dataclass(frozen=True, eq=False)
class CounterexampleReport:
    axiom: str
    mode: Mode
    model: object
    setting: Setting
    params: dict
    formula: Formula
    trace: tuple = ()

    def to_dict(self):
        return {
            'axiom': self.axiom,
            'mode': self.mode.value,
            'setting': {**self.setting.to_dict(), 'label': self.setting.describe()},
            'params': {key: _render_param(value) for key, value in self.params.items()},
            'formula': format_formula(self.formula),
            'trace': list(self.trace),
            'model': self.model.to_dict(),
        }


@dataclass(frozen=True)
class AxiomCheck:
    """Outcome of checking one schema on one model; `counterexample` is None on a pass"""
    axiom: str
    mode: Mode
    instances_checked: int
    budget_exhausted: bool = False
    skipped: bool = False
    counterexample: CounterexampleReport = None

    @property
    def passed(self):
        return self.counterexample is None

    def to_dict(self):
        return {
            'axiom': self.axiom,
            'mode': self.mode.value,
            'passed': self.passed,
            'instances_checked': self.instances_checked,
            'budget_exhausted': self.budget_exhausted,
            'skipped': self.skipped,
            'counterexample': self.counterexample.to_dict() if self.counterexample else None,
        }


def settings_for(m, mode, *, max_worlds=None):
    """Every world (counterfactual) or every context (interventionist) of `m`, canonical order"""
    if Mode(mode) is Mode.COUNTERFACTUAL:
        return [Setting(m, Level.WORLD, w.context, w.state)
                for w in enumerate_solutions(m, max_worlds=max_worlds)]
    return [Setting.at_context(m, u) for u in contexts(m)]


def check_axiom(schema, m, mode, *, budget=None, instances=None, evaluator=None, max_worlds=None):
    """Evaluate instances of `schema` on `m` until one fails somewhere or `budget` runs out"""
    schema = get_schema(schema)
    mode = Mode(mode)
    sig = m.signature
    if schema.bounded and not _within_bound(sig) and instances is None:
        logger.info("Skipping %s: signature exceeds the instantiation bound", schema.id)
        return AxiomCheck(schema.id, mode, 0, skipped=True)

    evaluator = evaluator or Evaluator(m, max_worlds=max_worlds)
    settings = [(s, s.worlds(max_worlds=max_worlds)) for s in settings_for(m, mode, max_worlds=max_worlds)]
    checked = 0
    exhausted = False
    for params in (instances if instances is not None else schema.candidates(sig)):
        if budget is not None and checked >= budget:
            exhausted = True
            break
        formula = instantiate(schema, sig, params)
        core = desugar(formula)
        checked += 1
        for setting, worlds in settings:
            if not evaluator.holds(setting.level, worlds, core):
                report = _report(schema, mode, m, setting, params, formula, max_worlds)
                logger.info("Counterexample to %s (%s) at %s: %s", schema.id, mode.value,
                            setting.describe(), format_formula(formula))
                return AxiomCheck(schema.id, mode, checked, counterexample=report)
    return AxiomCheck(schema.id, mode, checked, budget_exhausted=exhausted)


def _report(schema, mode, m, setting, params, formula, max_worlds):
    tracer = Evaluator(m, max_worlds=max_worlds, record=True)
    tracer.evaluate(setting, formula)
    return CounterexampleReport(schema.id, mode, m, setting, dict(params), formula, tuple(tracer.trace))


def replay(report):
    """Re-evaluate a counterexample; False means it still stands"""
    return Evaluator(report.model).evaluate(report.setting, report.formula)


# -- sweeps ---------------------------------------------------------------------

@dataclass(frozen=True)
class SweepConfig:
    models: int = 200
    seed: int = 0
    budget: int = 400
    modes: tuple = (Mode.COUNTERFACTUAL, Mode.INTERVENTIONIST)
    axioms: tuple = tuple(SCHEMAS)
    random: RandomModelConfig = field(default_factory=RandomModelConfig)
    include_reference: bool = True
    keep: int = 3
    max_worlds: int = 4096

    @classmethod
    def from_app_config(cls, config, **overrides):
        base = cls(models=config['SWEEP_MODELS'], seed=config['SWEEP_SEED'],
                   budget=config['AXIOM_INSTANCE_BUDGET'], max_worlds=config['MAX_WORLDS'],
                   random=RandomModelConfig.from_app_config(config))
        return replace(base, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self):
        return {
            'models': self.models,
            'seed': self.seed,
            'budget': self.budget,
            'modes': [Mode(m).value for m in self.modes],
            'axioms': list(self.axioms),
            'random': self.random.to_dict(),
            'include_reference': self.include_reference,
            'keep': self.keep,
            'max_worlds': self.max_worlds,
        }

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        if 'random' in data:
            data['random'] = RandomModelConfig(**data['random'])
        if 'modes' in data:
            data['modes'] = tuple(Mode(m) for m in data['modes'])
        if 'axioms' in data:
            data['axioms'] = tuple(data['axioms'])
        return cls(**data)


def sweep_corpus(config):
    """Reference models first, then `config.models` random models drawn from the seed"""
    corpus = []
    if config.include_reference:
        corpus.extend((name, build()) for name, build in REFERENCE_MODELS.items())
    rng = random.Random(config.seed)
    bounds = config.random
    for i in range(config.models):
        shape = replace(bounds,
                        exogenous=rng.randint(0, bounds.exogenous),
                        endogenous=rng.randint(1, bounds.endogenous))
        model_seed = rng.randrange(2 ** 32)
        corpus.append((f'random-{model_seed}', random_model(model_seed, shape)))
    return corpus


@dataclass
class SweepRow:
    axiom: str
    mode: Mode
    expected_sound: bool
    models_checked: int = 0
    models_failed: int = 0
    models_skipped: int = 0
    instances_checked: int = 0
    budget_exhausted: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def surprise(self):
        return self.models_failed > 0 if self.expected_sound else self.models_failed == 0

    def to_dict(self):
        return {
            'axiom': self.axiom,
            'mode': self.mode.value,
            'expected': 'sound' if self.expected_sound else 'unsound',
            'models_checked': self.models_checked,
            'models_failed': self.models_failed,
            'models_skipped': self.models_skipped,
            'instances_checked': self.instances_checked,
            'budget_exhausted': self.budget_exhausted,
            'surprise': self.surprise,
            'counterexamples': [{'model_name': name, **report.to_dict()} for name, report in self.counterexamples],
        }


@dataclass
class SweepSummary:
    config: SweepConfig
    rows: list

    def row(self, axiom, mode):
        mode = Mode(mode)
        return next(r for r in self.rows if r.axiom == axiom and r.mode is mode)

    def failures(self, axiom, mode):
        return self.row(axiom, mode).models_failed

    def to_dict(self):
        return {'config': self.config.to_dict(), 'rows': [r.to_dict() for r in self.rows]}

    def render(self):
        header = f"{'axiom':<7}{'mode':<6}{'expected':<10}{'models':>7}{'failed':>8}{'instances':>11}{'capped':>8}  status"
        lines = [header]
        for r in self.rows:
            status = 'SURPRISE' if r.surprise else 'ok'
            lines.append(f"{r.axiom:<7}{r.mode.value:<6}{'sound' if r.expected_sound else 'unsound':<10}"
                         f"{r.models_checked:>7}{r.models_failed:>8}{r.instances_checked:>11}"
                         f"{r.budget_exhausted:>8}  {status}")
        return '\n'.join(lines)


def soundness_sweep(config=None, corpus=None):
    """Check every configured schema in every mode across the corpus; aggregation order is fixed"""
    config = config or SweepConfig()
    corpus = corpus if corpus is not None else sweep_corpus(config)
    schemas = [get_schema(a) for a in config.axioms]
    modes = [Mode(m) for m in config.modes]
    rows = {(s.id, mode): SweepRow(s.id, mode, mode in s.sound_in) for s in schemas for mode in modes}
    logger.info("Sweep started: %d model(s), %d schema(s), modes %s",
                len(corpus), len(schemas), ','.join(m.value for m in modes))

    for name, model in corpus:
        evaluator = Evaluator(model, max_worlds=config.max_worlds)
        for schema in schemas:
            for mode in modes:
                result = check_axiom(schema, model, mode, budget=config.budget,
                                     evaluator=evaluator, max_worlds=config.max_worlds)
                row = rows[(schema.id, mode)]
                if result.skipped:
                    row.models_skipped += 1
                    continue
                row.models_checked += 1
                row.instances_checked += result.instances_checked
                row.budget_exhausted += int(result.budget_exhausted)
                if not result.passed:
                    row.models_failed += 1
                    if len(row.counterexamples) < config.keep:
                        row.counterexamples.append((name, result.counterexample))

    summary = SweepSummary(config, list(rows.values()))
    surprises = [f'{r.axiom}/{r.mode.value}' for r in summary.rows if r.surprise]
    logger.info("Sweep finished: %d surprise(s)%s", len(surprises),
                f" ({', '.join(surprises)})" if surprises else '')
    return summary
