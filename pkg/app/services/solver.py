"""Solutions, refinement and dependence for nondeterministic structural equation models"""
import logging

from app.errors import EnumerationLimitError, ModelValidationError
from app.models.nsem import Verdict, World, sort_worlds
from app.models.signature import CausalGraph

logger = logging.getLogger(__name__)


def validate_model(m):
    """Report every violated structural invariant of `m`"""
    report = m.report()
    if not report.is_valid:
        logger.warning("Model failed validation with %d violation(s)", len(report.violations))
    return report


def _ensure_valid(m):
    report = m.report()
    if not report.is_valid:
        raise ModelValidationError(report)


def is_solution(m, w):
    sig = m.signature
    assignment = w.assignment if isinstance(w, World) else w
    sig.check_assignment(assignment, sig.variables)
    return all(assignment[x] in m.possible_values(x, assignment) for x in sig.endogenous)


def enumerate_solutions(m, ctx=None, *, max_worlds=None):
    """All solutions of `m`, optionally restricted to the context `ctx`, in canonical order.

    Variables are solved in topological order of the graph, branching on
    every value a row allows.
    """
    if not m.checked:
        _ensure_valid(m)
    sig = m.signature
    ctx = dict(ctx or {})
    sig.check_assignment(ctx, sig.exogenous, total=False)
    if max_worlds is not None and sig.count_worlds() > max_worlds:
        raise EnumerationLimitError(
            f"Model has {sig.count_worlds()} worlds, above the limit of {max_worlds}")

    order = m.graph.topological_order()
    partials = [{}]
    for name in order:
        extended = []
        for partial in partials:
            if sig.is_exogenous(name):
                choices = (ctx[name],) if name in ctx else sig.ranges[name]
            else:
                choices = sig.order_values(name, m.possible_values(name, partial))
            for value in choices:
                grown = dict(partial)
                grown[name] = value
                extended.append(grown)
        partials = extended

    worlds = sort_worlds(sig, [World.split(sig, a) for a in partials])
    logger.debug("Enumerated %d solution(s) for %r", len(worlds), m)
    return worlds


def contexts(m):
    """Every context of `m` as a dict, in canonical order"""
    return list(m.signature.assignments(m.signature.exogenous))


def is_refinement(m2, m1):
    """True iff every row of `m2` is a subset of the matching row of `m1`"""
    if m2.signature != m1.signature:
        return Verdict(False, "models have different signatures")
    if m2.graph != m1.graph:
        return Verdict(False, "models have different graphs")
    for name, table in m1.equations.items():
        other = m2.equations[name]
        for key, values in table.rows.items():
            if not other.rows[key] <= values:
                return Verdict(False, f"row {key} of {name} is not a subset")
    return Verdict(True)


def is_deterministic(m):
    return all(table.is_deterministic() for table in m.equations.values())


def depends_on(m, child, parent):
    """Whether changing `parent` alone, other parents held fixed, changes the row of `child`"""
    table = m.equations[child]
    if parent not in table.parents:
        return False
    position = table.parents.index(parent)
    by_rest = {}
    for key, values in table.rows.items():
        rest = key[:position] + key[position + 1:]
        by_rest.setdefault(rest, set()).add(values)
    return any(len(variants) > 1 for variants in by_rest.values())


def dependence_graph(m):
    """G_D: the edges of G_M along which the child actually depends on the parent"""
    edges = {(p, c) for p, c in m.graph.edges if depends_on(m, c, p)}
    return CausalGraph(m.graph.nodes, edges)
