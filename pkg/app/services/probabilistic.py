"""Probabilistic causal models: joint distributions, counterfactual probabilities and CBN induction.

All arithmetic is exact (`fractions.Fraction`).
"""
import logging
from fractions import Fraction
from itertools import product

from app.errors import (EnumerationLimitError, FormulaSyntaxError, MalformedWorldError, ModelValidationError,
                        SettingError, StructureError)
from app.models.formula import And, Bottom, Box, Implies, Intervention, Not, Or, ProbEq, Top, is_basic
from app.models.nsem import EquationTable, Model, Verdict, World
from app.models.pnsem import CBN, ConditionalTable, CounterfactualDistribution, render_fraction
from app.utils.formulas import desugar_disjunctive, eval_basic
from app.utils.parser import format_formula

logger = logging.getLogger(__name__)


def validate_pmodel(pm):
    report = pm.report()
    if not report.is_valid:
        logger.warning("Probabilistic model failed validation with %d violation(s)", len(report.violations))
    return report


def _assignment(pm, w):
    sig = pm.signature
    assignment = dict(w.assignment) if isinstance(w, World) else dict(w)
    sig.check_assignment(assignment, sig.variables)
    return assignment


def _as_intervention(iv):
    if iv is None:
        return Intervention()
    return iv if isinstance(iv, Intervention) else Intervention.of(iv)


def joint_probability(pm, w):
    """P_M(u, v) as the product of every variable's table entry (Causal Markov Condition)"""
    assignment = _assignment(pm, w)
    p = Fraction(1)
    for name, table in pm.tables.items():
        p *= table.prob(assignment[name], assignment)
        if not p:
            break
    return p


def is_solution_p(pm, w):
    return joint_probability(pm, w) > 0


def positive_worlds(pm, *, max_worlds=None):
    """Every world of positive probability with its probability, in canonical order"""
    sig = pm.signature
    if max_worlds is not None and sig.count_worlds() > max_worlds:
        raise EnumerationLimitError(
            f"Model has {sig.count_worlds()} worlds, above the limit of {max_worlds}")
    partials = [({}, Fraction(1))]
    for name in pm.graph.topological_order():
        table = pm.tables[name]
        extended = []
        for partial, p in partials:
            dist = table.distribution_for(partial)
            for value in sig.order_values(name, dist):
                grown = dict(partial)
                grown[name] = value
                extended.append((grown, p * dist[value]))
        partials = extended
    worlds = [(World.split(sig, a), p) for a, p in partials]
    worlds.sort(key=lambda item: tuple(sig.index_of(n, item[0][n]) for n in sig.variables))
    return worlds


def state_marginal(pm, *, max_worlds=None):
    """P_M(V): the joint summed over contexts"""
    totals = {}
    for world, p in positive_worlds(pm, max_worlds=max_worlds):
        totals[world.state] = totals.get(world.state, Fraction(0)) + p
    return CounterfactualDistribution(pm.signature, totals)


def consistent(pm, m):
    """P_X(x | pa) > 0 exactly when x is in f_X(pa), for every endogenous X"""
    if pm.signature != m.signature:
        return Verdict(False, "models have different signatures")
    if pm.graph != m.graph:
        return Verdict(False, "models have different graphs")
    sig = m.signature
    for name in sig.endogenous:
        table, equation = pm.tables[name], m.equations[name]
        for key, values in equation.rows.items():
            support = table.support(key)
            if support != values:
                return Verdict(False, (
                    f"support of P_{name} at row {key} is {list(sig.order_values(name, support))} "
                    f"but f_{name} gives {list(sig.order_values(name, values))}"))
    return Verdict(True)


def support_nsem(pm):
    """The NSEM whose rows are the supports of the probabilistic rows"""
    sig = pm.signature
    equations = {
        name: EquationTable(name, pm.tables[name].parents,
                            {key: set(dist) for key, dist in pm.tables[name].rows.items()})
        for name in sig.endogenous
    }
    return Model(sig, pm.graph, equations, validate=not pm.checked, checked=pm.checked)


def actualized_refinement_p(pm, w):
    """Point rows at w's value for the row w selects, for every variable in U and V"""
    assignment = _assignment(pm, w)
    if joint_probability(pm, assignment) == 0:
        raise SettingError(f"World {World.split(pm.signature, assignment).render()} has probability 0")
    pinned = {}
    for name, table in pm.tables.items():
        key = tuple(assignment[p] for p in table.parents)
        pinned[name] = table.replace_row(key, {assignment[name]: 1})
    return pm.replace(tables=pinned)


def intervene_p(pm, iv):
    iv = _as_intervention(iv)
    assignment = iv.as_dict()
    sig = pm.signature
    for name in assignment:
        if not sig.is_endogenous(name):
            raise MalformedWorldError(f"Cannot intervene on non-endogenous variable '{name}'")
    sig.check_assignment(assignment, sig.endogenous, total=False)
    if not iv:
        return pm
    points = {name: ConditionalTable.point(name, value) for name, value in assignment.items()}
    return pm.replace(graph=pm.graph.without_incoming(assignment), tables=points)


def counterfactual_distribution(pm, w, iv, *, max_worlds=None):
    """P*: the state distribution of the refined model at w under iv"""
    target = intervene_p(actualized_refinement_p(pm, w), iv)
    return state_marginal(target, max_worlds=max_worlds)


def counterfactual_probability(pm, w, iv, phi, *, max_worlds=None):
    """P_{M'}(phi) for M' the refinement of pm at w under iv"""
    dist = counterfactual_distribution(pm, w, iv, max_worlds=max_worlds)
    total = sum((p for state, p in dist.items() if eval_basic(state, phi)), Fraction(0))
    logger.debug("P*(%s | do(%s), %s) = %s", format_formula(phi), _as_intervention(iv).render(),
                 World.split(pm.signature, _assignment(pm, w)).render(), render_fraction(total))
    return total


def satisfies_p(pm, w, f, *, max_worlds=None):
    """Whether the solution world w of pm satisfies the probabilistic formula f"""
    assignment = _assignment(pm, w)
    if joint_probability(pm, assignment) == 0:
        raise SettingError(f"World {World.split(pm.signature, assignment).render()} has probability 0")
    return _holds_p(pm, assignment, desugar_disjunctive(f), max_worlds)


def _holds_p(pm, assignment, f, max_worlds):
    if isinstance(f, ProbEq):
        subject = f.subject
        if is_basic(subject):
            holds = eval_basic(assignment, subject)
            return (f.probability == 1 and holds) or (f.probability == 0 and not holds)
        if isinstance(subject, Box):
            p = counterfactual_probability(pm, assignment, subject.intervention, subject.body,
                                           max_worlds=max_worlds)
            return p == f.probability
        raise FormulaSyntaxError("A probability assertion needs a basic formula or a [..] formula")
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not _holds_p(pm, assignment, f.operand, max_worlds)
    if isinstance(f, And):
        return all(_holds_p(pm, assignment, op, max_worlds) for op in f.operands)
    if isinstance(f, Or):
        return any(_holds_p(pm, assignment, op, max_worlds) for op in f.operands)
    if isinstance(f, Implies):
        return (not _holds_p(pm, assignment, f.antecedent, max_worlds)
                or _holds_p(pm, assignment, f.consequent, max_worlds))
    raise FormulaSyntaxError("Only assertions of the form psi = p are evaluated against probabilistic models")


def induce_cbn(pm):
    """C_M: marginalize each endogenous table over its exogenous parents"""
    sig = pm.signature
    owners = {}
    for parent, child in sorted(pm.graph.edges):
        if sig.is_exogenous(parent):
            if parent in owners and owners[parent] != child:
                raise StructureError(
                    f"Exogenous variable {parent} is a parent of both {owners[parent]} and {child}")
            owners[parent] = child

    tables = {}
    for name in sig.endogenous:
        table = pm.tables[name]
        endo_parents = tuple(p for p in table.parents if sig.is_endogenous(p))
        exo_parents = tuple(p for p in table.parents if sig.is_exogenous(p))
        rows = {}
        for endo in sig.assignments(endo_parents):
            dist = {}
            for exo in sig.assignments(exo_parents):
                weight = Fraction(1)
                for u in exo_parents:
                    weight *= pm.tables[u].prob(exo[u], {})
                for value, p in table.distribution_for({**endo, **exo}).items():
                    dist[value] = dist.get(value, Fraction(0)) + weight * p
            rows[tuple(endo[p] for p in endo_parents)] = dist
        tables[name] = ConditionalTable(name, endo_parents, rows)

    endogenous = sig.endogenous
    try:
        return CBN(sig.restrict(endogenous), pm.graph.restrict(endogenous), tables)
    except ModelValidationError as e:
        raise StructureError(f"Induced network is invalid: {'; '.join(e.report.violations)}")


def as_cbn(pm):
    """View an exogenous-free probabilistic model as a CBN"""
    if isinstance(pm, CBN):
        return pm
    if pm.signature.exogenous:
        raise StructureError("Model has exogenous variables; induce the network first")
    return CBN(pm.signature, pm.graph, dict(pm.tables))


def cbn_counterfactual(c, v, iv, *, max_worlds=None):
    """P*_V(V* | do(iv), v): the observed row of each non-intervened variable pinned, the rest kept"""
    c = as_cbn(c)
    sig = c.signature
    state = dict(v)
    sig.check_assignment(state, sig.endogenous)
    if joint_probability(c, state) == 0:
        raise SettingError(f"State {World.split(sig, state).render()} is outside the support of P_V")
    iv = _as_intervention(iv)
    forced = iv.as_dict()
    sig.check_assignment(forced, sig.endogenous, total=False)
    if max_worlds is not None and sig.count_worlds() > max_worlds:
        raise EnumerationLimitError(
            f"Network has {sig.count_worlds()} states, above the limit of {max_worlds}")

    factors = {}
    for name, table in c.tables.items():
        if name in forced:
            factors[name] = ConditionalTable.point(name, forced[name])
        else:
            observed = tuple(state[p] for p in table.parents)
            factors[name] = table.replace_row(observed, {state[name]: 1})

    probabilities = {}
    names = sig.endogenous
    for combo in product(*(sig.ranges[n] for n in names)):
        candidate = dict(zip(names, combo))
        p = Fraction(1)
        for name, table in factors.items():
            p *= table.prob(candidate[name], candidate)
            if not p:
                break
        if p:
            probabilities[tuple(sorted(candidate.items()))] = p
    return CounterfactualDistribution(sig, probabilities)
