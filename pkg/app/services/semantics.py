"""Actualized refinement, intervention and the satisfaction relation.

A basic causal formula [Y<-y]phi holds at a world (u, v) when phi holds in
every state v' such that (u, v') solves the actualized refinement of the
model at (u, v) under Y<-y. At the context, state and model levels each
basic causal formula is required at every admissible world, and the
Boolean connectives then combine those level-wide truth values.
"""
import logging
from dataclasses import dataclass
from enum import Enum

from app.errors import FormulaSyntaxError, MalformedWorldError, SettingError
from app.models.formula import And, Box, Implies, Intervention, Not, Or, is_basic, is_probabilistic
from app.models.nsem import EquationTable, World
from app.services.solver import enumerate_solutions, is_solution
from app.utils.formulas import desugar, eval_basic
from app.utils.parser import format_formula

logger = logging.getLogger(__name__)


class Level(str, Enum):
    WORLD = 'world'
    CONTEXT = 'context'
    STATE = 'state'
    MODEL = 'model'


def _as_world(m, w):
    return w if isinstance(w, World) else m.world(w)


def _as_intervention(iv):
    if iv is None:
        return Intervention()
    return iv if isinstance(iv, Intervention) else Intervention.of(iv)


@dataclass(frozen=True, eq=False)
class Setting:
    """A model together with the part of a world that is fixed: all of it, u, v or nothing"""
    model: object
    level: Level
    context: tuple = ()
    state: tuple = ()

    @classmethod
    def at_world(cls, m, w):
        w = _as_world(m, w)
        if not is_solution(m, w):
            raise SettingError(f"World {w.render()} is not a solution of the model")
        return cls(m, Level.WORLD, w.context, w.state)

    @classmethod
    def at_context(cls, m, u=None):
        u = dict(u or {})
        m.signature.check_assignment(u, m.signature.exogenous)
        return cls(m, Level.CONTEXT, tuple(sorted(u.items())))

    @classmethod
    def at_state(cls, m, v):
        v = dict(v)
        m.signature.check_assignment(v, m.signature.endogenous)
        setting = cls(m, Level.STATE, state=tuple(sorted(v.items())))
        if not setting.worlds():
            raise SettingError(f"No context makes state {setting.describe()} a solution")
        return setting

    @classmethod
    def model_only(cls, m):
        return cls(m, Level.MODEL)

    def worlds(self, *, max_worlds=None):
        """Admissible worlds of the setting in canonical order"""
        if self.level is Level.WORLD:
            return [World(self.context, self.state)]
        if self.level is Level.CONTEXT:
            return enumerate_solutions(self.model, dict(self.context), max_worlds=max_worlds)
        solutions = enumerate_solutions(self.model, max_worlds=max_worlds)
        if self.level is Level.STATE:
            state = dict(self.state)
            return [w for w in solutions if w.state_dict == state]
        return solutions

    def describe(self):
        if self.level is Level.MODEL:
            return 'M'
        return ','.join(f'{n}={v}' for n, v in self.context + self.state) or '∅'

    def to_dict(self):
        return {'level': self.level.value, 'context': dict(self.context), 'state': dict(self.state)}


def actualized_refinement(m, w):
    """M^(u,v): pin the row of each endogenous variable selected by w to w's own value"""
    w = _as_world(m, w)
    if not is_solution(m, w):
        raise SettingError(f"World {w.render()} is not a solution of the model")
    pinned = {}
    for name in m.signature.endogenous:
        table = m.equations[name]
        key = w.restrict(table.parents)
        pinned[name] = table.replace_row(key, {w[name]})
    return m.replace(equations=pinned)


def intervene(m, iv):
    """M_{Y<-y}: constant equations for the intervened variables and no edges into them"""
    iv = _as_intervention(iv)
    assignment = iv.as_dict()
    sig = m.signature
    for name in assignment:
        if not sig.is_endogenous(name):
            raise MalformedWorldError(f"Cannot intervene on non-endogenous variable '{name}'")
    sig.check_assignment(assignment, sig.endogenous, total=False)
    if not iv:
        return m
    constants = {name: EquationTable.constant(name, value) for name, value in assignment.items()}
    return m.replace(graph=m.graph.without_incoming(assignment), equations=constants)


class Evaluator:
    """Evaluates desugared causal formulas over one model, memoizing counterfactual outcomes.

    With `record=True` every basic causal evaluation is appended to `trace`.
    """

    def __init__(self, model, *, max_worlds=None, record=False):
        self.model = model
        self.max_worlds = max_worlds
        self.record = record
        self.trace = []
        self._refined = {}
        self._outcomes = {}
        self._boxes = {}

    def refined(self, world):
        if world not in self._refined:
            self._refined[world] = actualized_refinement(self.model, world)
        return self._refined[world]

    def outcomes(self, world, iv):
        """States v' with (u, v') a solution of the refined model under iv"""
        key = (world, iv.key)
        if key not in self._outcomes:
            target = intervene(self.refined(world), iv)
            self._outcomes[key] = tuple(
                enumerate_solutions(target, world.context_dict, max_worlds=self.max_worlds))
        return self._outcomes[key]

    def box(self, world, f):
        key = (world, f)
        if key not in self._boxes:
            outcomes = self.outcomes(world, f.intervention)
            result = all(eval_basic(s, f.body) for s in outcomes)
            self._boxes[key] = result
            if self.record:
                self.trace.append({
                    'formula': format_formula(f),
                    'world': world.render(),
                    'outcomes': [s.render() for s in outcomes],
                    'result': result,
                })
        return self._boxes[key]

    def holds_at(self, world, f):
        """Classical evaluation at a single world"""
        if isinstance(f, Box):
            return self.box(world, f)
        if isinstance(f, Not):
            return not self.holds_at(world, f.operand)
        if isinstance(f, And):
            return all(self.holds_at(world, op) for op in f.operands)
        if isinstance(f, Or):
            return any(self.holds_at(world, op) for op in f.operands)
        if isinstance(f, Implies):
            return not self.holds_at(world, f.antecedent) or self.holds_at(world, f.consequent)
        return eval_basic(world, f)

    def holds_across(self, worlds, f):
        """Level-wide evaluation: basic causal formulas quantified over `worlds`, then combined"""
        if isinstance(f, Box):
            return all(self.box(w, f) for w in worlds)
        if is_basic(f):
            # phi reads as []phi
            return all(eval_basic(w, f) for w in worlds)
        if isinstance(f, Not):
            return not self.holds_across(worlds, f.operand)
        if isinstance(f, And):
            return all(self.holds_across(worlds, op) for op in f.operands)
        if isinstance(f, Or):
            return any(self.holds_across(worlds, op) for op in f.operands)
        if isinstance(f, Implies):
            return not self.holds_across(worlds, f.antecedent) or self.holds_across(worlds, f.consequent)
        raise TypeError(f"Not a causal formula: {f!r}")

    def holds(self, level, worlds, core):
        """Truth of an already desugared formula at a level, given the level's admissible worlds"""
        if level is Level.WORLD:
            return self.holds_at(worlds[0], core)
        return self.holds_across(worlds, core)

    def evaluate(self, setting, f):
        core = desugar(f)
        if is_probabilistic(core):
            raise FormulaSyntaxError("Probabilistic formulas are evaluated against probabilistic models")
        return self.holds(setting.level, setting.worlds(max_worlds=self.max_worlds), core)


def satisfies(setting, f, *, max_worlds=None):
    """Whether `setting` satisfies the causal formula `f`"""
    result = Evaluator(setting.model, max_worlds=max_worlds).evaluate(setting, f)
    logger.debug("%s at %s setting %s: %s", format_formula(f), setting.level.value, setting.describe(), result)
    return result


def interventionist_oracle(m, iv, phi, ctx=None, *, max_worlds=None):
    """phi in every solution of M_{iv} (within `ctx` when given), with no refinement involved"""
    target = intervene(m, iv)
    return all(eval_basic(w, phi) for w in enumerate_solutions(target, ctx, max_worlds=max_worlds))
