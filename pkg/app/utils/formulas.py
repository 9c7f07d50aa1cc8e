"""Desugaring and evaluation of basic formulas"""
from itertools import product

from app.errors import FormulaRangeError
from app.models.formula import (And, Atom, Bottom, Box, Diamond, Implies, Intervention, Not, Or,
                                ProbEq, SetBox, SetDiamond, Top, conj, disj)
from app.models.nsem import World


def _rebuild(f, rewrite):
    """Apply `rewrite` to the children of `f` and rebuild the node"""
    if isinstance(f, Not):
        return Not(rewrite(f.operand))
    if isinstance(f, And):
        return And(tuple(rewrite(op) for op in f.operands))
    if isinstance(f, Or):
        return Or(tuple(rewrite(op) for op in f.operands))
    if isinstance(f, Implies):
        return Implies(rewrite(f.antecedent), rewrite(f.consequent))
    if isinstance(f, Box):
        return Box(f.intervention, rewrite(f.body))
    if isinstance(f, Diamond):
        return Diamond(f.intervention, rewrite(f.body))
    if isinstance(f, SetBox):
        return SetBox(f.assignments, rewrite(f.body))
    if isinstance(f, SetDiamond):
        return SetDiamond(f.assignments, rewrite(f.body))
    if isinstance(f, ProbEq):
        return ProbEq(rewrite(f.subject), f.probability)
    return f


def desugar_diamond(f):
    """Rewrite every <..>phi as ![..]!phi"""
    if isinstance(f, Diamond):
        return Not(Box(f.intervention, Not(desugar_diamond(f.body))))
    if isinstance(f, SetDiamond):
        return Not(SetBox(f.assignments, Not(desugar_diamond(f.body))))
    return _rebuild(f, desugar_diamond)


def _point_interventions(assignments):
    for var, values in assignments:
        if not values:
            raise FormulaRangeError(f"Empty value set for '{var}' in a disjunctive intervention")
    names = [var for var, _ in assignments]
    for combo in product(*(values for _, values in assignments)):
        yield Intervention(tuple(zip(names, combo)))


def desugar_disjunctive(f):
    """Expand set interventions: boxes into conjunctions, diamonds into disjunctions"""
    if isinstance(f, SetBox):
        body = desugar_disjunctive(f.body)
        return conj(*(Box(iv, body) for iv in _point_interventions(f.assignments)))
    if isinstance(f, SetDiamond):
        body = desugar_disjunctive(f.body)
        return disj(*(Diamond(iv, body) for iv in _point_interventions(f.assignments)))
    return _rebuild(f, desugar_disjunctive)


def desugar(f):
    """Core form: only point boxes over basic formulas, with Boolean connectives"""
    return desugar_diamond(desugar_disjunctive(f))


def eval_basic(state, f):
    """Truth of the basic formula `f` in `state` (a mapping over V, or a World)"""
    if isinstance(state, World):
        state = state.assignment
    if isinstance(f, Atom):
        return state[f.var] == f.value
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not eval_basic(state, f.operand)
    if isinstance(f, And):
        return all(eval_basic(state, op) for op in f.operands)
    if isinstance(f, Or):
        return any(eval_basic(state, op) for op in f.operands)
    if isinstance(f, Implies):
        return not eval_basic(state, f.antecedent) or eval_basic(state, f.consequent)
    raise TypeError(f"Not a basic formula: {f!r}")
