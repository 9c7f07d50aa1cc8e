from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType

from app.errors import ModelValidationError
from app.models.signature import CausalGraph, Signature


@dataclass(frozen=True)
class ValidationReport:
    """Violations found in a model; empty means valid"""
    violations: tuple = ()

    @property
    def is_valid(self):
        return not self.violations

    def __bool__(self):
        return self.is_valid

    def to_dict(self):
        return {'valid': self.is_valid, 'violations': list(self.violations)}


@dataclass(frozen=True)
class World:
    """Total assignment: a context over U and a state over V, each as sorted (name, value) pairs"""
    context: tuple = ()
    state: tuple = ()

    @classmethod
    def of(cls, signature, assignment):
        signature.check_assignment(assignment, signature.variables)
        return cls.split(signature, assignment)

    @classmethod
    def split(cls, signature, assignment):
        context = tuple((n, assignment[n]) for n in signature.exogenous)
        state = tuple((n, assignment[n]) for n in signature.endogenous)
        return cls(context, state)

    @cached_property
    def assignment(self):
        return MappingProxyType(dict(self.context + self.state))

    @property
    def context_dict(self):
        return dict(self.context)

    @property
    def state_dict(self):
        return dict(self.state)

    def __getitem__(self, name):
        return self.assignment[name]

    def restrict(self, names):
        return tuple(self.assignment[n] for n in names)

    def to_dict(self):
        return {'context': dict(self.context), 'state': dict(self.state)}

    def render(self):
        return ','.join(f'{n}={v}' for n, v in self.context + self.state)


def sort_worlds(signature, worlds):
    """Canonical lexicographic order by range index of each variable, variables sorted by name"""
    return sorted(worlds, key=lambda w: tuple(signature.index_of(n, w[n]) for n in signature.variables))


@dataclass(frozen=True, eq=False)
class EquationTable:
    """Multi-valued structural equation: parent tuple -> set of possible child values"""
    child: str
    parents: tuple
    rows: MappingProxyType

    def __init__(self, child, parents, rows):
        object.__setattr__(self, 'child', child)
        object.__setattr__(self, 'parents', tuple(parents))
        object.__setattr__(self, 'rows', MappingProxyType(
            {tuple(key): frozenset(values) for key, values in rows.items()}))

    def __eq__(self, other):
        if not isinstance(other, EquationTable):
            return NotImplemented
        return (self.child, self.parents, dict(self.rows)) == (other.child, other.parents, dict(other.rows))

    __hash__ = None

    def values_for(self, assignment):
        return self.rows[tuple(assignment[p] for p in self.parents)]

    def is_deterministic(self):
        return all(len(values) == 1 for values in self.rows.values())

    def replace_row(self, key, values):
        rows = dict(self.rows)
        rows[tuple(key)] = frozenset(values)
        return EquationTable(self.child, self.parents, rows)

    @classmethod
    def constant(cls, child, value):
        return cls(child, (), {(): {value}})

    def violations(self, signature, expected_parents):
        problems = []
        child = self.child
        if self.parents != tuple(expected_parents):
            problems.append(
                f"equation for {child} uses parents ({', '.join(self.parents)}) "
                f"but the graph gives ({', '.join(expected_parents)})")
            return problems
        expected = {tuple(a[p] for p in self.parents) for a in signature.assignments(self.parents)}
        missing = expected - set(self.rows)
        extra = set(self.rows) - expected
        if missing:
            problems.append(f"missing rows in equation for {child}: {sorted(missing, key=str)}")
        if extra:
            problems.append(f"extra rows in equation for {child}: {sorted(extra, key=str)}")
        child_range = set(signature.ranges.get(child, ()))
        for key, values in self.rows.items():
            if not values:
                problems.append(f"non-total equation for {child}")
            elif not values <= child_range:
                problems.append(f"range mismatch in equation for {child} at row {key}")
        return problems

    def to_dict(self, signature):
        rows = []
        for assignment in signature.assignments(self.parents):
            key = tuple(assignment[p] for p in self.parents)
            if key in self.rows:
                rows.append({'when': assignment,
                             'values': list(signature.order_values(self.child, self.rows[key]))})
        return rows


@dataclass(frozen=True, eq=False)
class Model:
    """Nondeterministic structural equation model M = (S, F, G).

    Construction validates eagerly; use `Model.unchecked` to hold an invalid
    model long enough to report on it.
    """
    signature: Signature
    graph: CausalGraph
    equations: MappingProxyType

    def __init__(self, signature, graph, equations, *, validate=True, checked=False):
        object.__setattr__(self, 'signature', signature)
        object.__setattr__(self, 'graph', graph)
        object.__setattr__(self, 'equations', MappingProxyType(dict(sorted(equations.items()))))
        if validate:
            report = self.report()
            if not report.is_valid:
                raise ModelValidationError(report)
            checked = True
        # set when the model is known valid, either validated here or derived from a valid model
        object.__setattr__(self, 'checked', checked)

    @classmethod
    def unchecked(cls, signature, graph, equations):
        return cls(signature, graph, equations, validate=False)

    @classmethod
    def from_rows(cls, signature, edges, rows):
        """Build from {child: {parent tuple: values}} using graph-sorted parents"""
        graph = CausalGraph(signature.variables, edges)
        equations = {child: EquationTable(child, graph.parents(child), table)
                     for child, table in rows.items()}
        return cls(signature, graph, equations)

    def __eq__(self, other):
        if not isinstance(other, Model):
            return NotImplemented
        return (self.signature == other.signature and self.graph == other.graph
                and dict(self.equations) == dict(other.equations))

    __hash__ = None

    def report(self):
        sig = self.signature
        problems = list(sig.violations())
        if set(self.graph.nodes) != set(sig.variables):
            problems.append("graph nodes do not match the signature variables")
        for parent, child in sorted(self.graph.edges):
            if sig.is_exogenous(child):
                problems.append(f"exogenous variable {child} has parent {parent}")
        cycle = self.graph.find_cycle()
        if cycle:
            problems.append(f"cycle {'→'.join(cycle + cycle[:1])}")
        for name in sig.endogenous:
            if name not in self.equations:
                problems.append(f"no equation for {name}")
        for name in self.equations:
            if not sig.is_endogenous(name):
                problems.append(f"equation given for non-endogenous variable {name}")
        # row checks need well-formed ranges
        if not sig.violations():
            for name, table in self.equations.items():
                if sig.is_endogenous(name):
                    problems.extend(table.violations(sig, self.graph.parents(name)))
        return ValidationReport(tuple(problems))

    def parents(self, name):
        return self.graph.parents(name)

    def possible_values(self, name, assignment):
        return self.equations[name].values_for(assignment)

    def world(self, assignment):
        return World.of(self.signature, assignment)

    def replace(self, *, graph=None, equations=None):
        """Copy with some equations (and optionally the graph) swapped; validity is preserved by callers"""
        merged = dict(self.equations)
        merged.update(equations or {})
        return Model(self.signature, graph or self.graph, merged, validate=False, checked=self.checked)

    def to_dict(self):
        sig = self.signature
        data = sig.to_dict()
        data['edges'] = [list(e) for e in sorted(self.graph.edges)]
        data['equations'] = {name: table.to_dict(sig) for name, table in self.equations.items()}
        return data

    def __repr__(self):
        return f"<Model U={list(self.signature.exogenous)} V={list(self.signature.endogenous)}>"


@dataclass(frozen=True)
class Verdict:
    """Boolean answer that can carry the reason it is false"""
    ok: bool
    reason: str = ''

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {'result': self.ok, 'reason': self.reason or None}
