from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from types import MappingProxyType

from app.errors import ModelValidationError
from app.models.nsem import ValidationReport, World
from app.models.signature import CausalGraph, Signature


def render_fraction(p):
    p = Fraction(p)
    return str(p.numerator) if p.denominator == 1 else f'{p.numerator}/{p.denominator}'


def render_decimal(p, places=10):
    """Decimal rendering of an exact probability, rounded to `places` and without trailing zeros"""
    p = Fraction(p)
    value = (Decimal(p.numerator) / Decimal(p.denominator)).quantize(Decimal(1).scaleb(-places))
    return format(value.normalize(), "f")


def _freeze_distribution(dist):
    return MappingProxyType({value: Fraction(p) for value, p in dist.items() if Fraction(p) != 0})


@dataclass(frozen=True, eq=False)
class ConditionalTable:
    """P_X(X | Pa_X): parent tuple -> {value: probability}, zero entries dropped"""
    variable: str
    parents: tuple
    rows: MappingProxyType

    def __init__(self, variable, parents, rows):
        object.__setattr__(self, 'variable', variable)
        object.__setattr__(self, 'parents', tuple(parents))
        object.__setattr__(self, 'rows', MappingProxyType(
            {tuple(key): _freeze_distribution(dist) for key, dist in rows.items()}))

    def __eq__(self, other):
        if not isinstance(other, ConditionalTable):
            return NotImplemented
        return ((self.variable, self.parents) == (other.variable, other.parents)
                and {k: dict(v) for k, v in self.rows.items()} == {k: dict(v) for k, v in other.rows.items()})

    __hash__ = None

    @classmethod
    def point(cls, variable, value):
        return cls(variable, (), {(): {value: 1}})

    def distribution_for(self, assignment):
        return self.rows[tuple(assignment[p] for p in self.parents)]

    def prob(self, value, assignment):
        return self.distribution_for(assignment).get(value, Fraction(0))

    def support(self, key):
        return frozenset(self.rows[tuple(key)])

    def replace_row(self, key, dist):
        rows = dict(self.rows)
        rows[tuple(key)] = dist
        return ConditionalTable(self.variable, self.parents, rows)

    def is_point(self):
        return all(len(dist) == 1 for dist in self.rows.values())

    def violations(self, signature, expected_parents, *, exogenous=False):
        problems = []
        name = self.variable
        if self.parents != tuple(expected_parents):
            problems.append(
                f"table for {name} uses parents ({', '.join(self.parents)}) "
                f"but the graph gives ({', '.join(expected_parents)})")
            return problems
        expected = {tuple(a[p] for p in self.parents) for a in signature.assignments(self.parents)}
        missing = expected - set(self.rows)
        extra = set(self.rows) - expected
        if missing:
            problems.append(f"missing rows in table for {name}: {sorted(missing, key=str)}")
        if extra:
            problems.append(f"extra rows in table for {name}: {sorted(extra, key=str)}")
        values = signature.ranges.get(name, ())
        for key, dist in sorted(self.rows.items(), key=lambda item: str(item[0])):
            if not set(dist) <= set(values):
                problems.append(f"range mismatch in table for {name} at row {key}")
            if any(p < 0 for p in dist.values()):
                problems.append(f"negative probability in table for {name} at row {key}")
            total = sum(dist.values(), Fraction(0))
            if total != 1:
                problems.append(f"row {key} of the table for {name} sums to {render_fraction(total)}")
            if exogenous and set(dist) != set(values):
                problems.append(f"exogenous {name} must give every value positive probability")
        return problems

    def to_dict(self, signature):
        rows = []
        for assignment in signature.assignments(self.parents):
            key = tuple(assignment[p] for p in self.parents)
            if key in self.rows:
                dist = self.rows[key]
                rows.append({'when': assignment,
                             'cpt': [{'value': v, 'prob': render_fraction(dist[v])}
                                     for v in signature.ranges[self.variable] if v in dist]})
        return rows


@dataclass(frozen=True, eq=False)
class PModel:
    """Probabilistic causal model: one conditional table per variable, exogenous ones included"""
    signature: Signature
    graph: CausalGraph
    tables: MappingProxyType

    def __init__(self, signature, graph, tables, *, validate=True, checked=False):
        object.__setattr__(self, 'signature', signature)
        object.__setattr__(self, 'graph', graph)
        object.__setattr__(self, 'tables', MappingProxyType(dict(sorted(tables.items()))))
        if validate:
            report = self.report()
            if not report.is_valid:
                raise ModelValidationError(report)
            checked = True
        object.__setattr__(self, 'checked', checked)

    @classmethod
    def from_rows(cls, signature, edges, rows):
        """Build from {variable: {parent tuple: {value: p}}} using graph-sorted parents"""
        graph = CausalGraph(signature.variables, edges)
        tables = {name: ConditionalTable(name, graph.parents(name), table) for name, table in rows.items()}
        return cls(signature, graph, tables)

    def __eq__(self, other):
        if not isinstance(other, PModel):
            return NotImplemented
        return (type(self) is type(other) and self.signature == other.signature
                and self.graph == other.graph and dict(self.tables) == dict(other.tables))

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
        for name in sig.variables:
            if name not in self.tables:
                problems.append(f"no table for {name}")
        for name in self.tables:
            if name not in sig.variables:
                problems.append(f"table given for undeclared variable {name}")
        if not sig.violations():
            for name, table in self.tables.items():
                if name in sig.variables:
                    problems.extend(table.violations(
                        sig, self.graph.parents(name), exogenous=sig.is_exogenous(name)))
        return ValidationReport(tuple(problems))

    def parents(self, name):
        return self.graph.parents(name)

    def world(self, assignment):
        return World.of(self.signature, assignment)

    def replace(self, *, graph=None, tables=None):
        merged = dict(self.tables)
        merged.update(tables or {})
        return type(self)(self.signature, graph or self.graph, merged, validate=False, checked=self.checked)

    def to_dict(self):
        sig = self.signature
        data = sig.to_dict()
        data['edges'] = [list(e) for e in sorted(self.graph.edges)]
        data['equations'] = {name: table.to_dict(sig) for name, table in self.tables.items()}
        return data

    def __repr__(self):
        return f"<{type(self).__name__} U={list(self.signature.exogenous)} V={list(self.signature.endogenous)}>"


class CBN(PModel):
    """Causal Bayesian network: a probabilistic model without exogenous variables"""

    def report(self):
        report = super().report()
        if self.signature.exogenous:
            extra = (f"a causal Bayesian network has no exogenous variables, got "
                     f"{', '.join(self.signature.exogenous)}",)
            return ValidationReport(report.violations + extra)
        return report


@dataclass(frozen=True, eq=False)
class CounterfactualDistribution:
    """P*: probability of each counterfactual state, states as sorted (name, value) pairs"""
    signature: Signature
    probabilities: MappingProxyType

    def __init__(self, signature, probabilities):
        object.__setattr__(self, 'signature', signature)
        cleaned = {tuple(sorted(dict(state).items())): Fraction(p) for state, p in probabilities.items()}
        object.__setattr__(self, 'probabilities', MappingProxyType(
            {state: p for state, p in cleaned.items() if p != 0}))

    def __eq__(self, other):
        if not isinstance(other, CounterfactualDistribution):
            return NotImplemented
        return dict(self.probabilities) == dict(other.probabilities)

    __hash__ = None

    def __getitem__(self, state):
        return self.probabilities.get(tuple(sorted(dict(state).items())), Fraction(0))

    def total(self):
        return sum(self.probabilities.values(), Fraction(0))

    def items(self):
        """(state dict, probability) pairs in canonical state order"""
        sig = self.signature
        ordered = sorted(self.probabilities.items(),
                         key=lambda item: tuple(sig.index_of(n, v) for n, v in item[0]))
        return [(dict(state), p) for state, p in ordered]

    def to_dict(self):
        return [{'state': state, 'prob': render_fraction(p)} for state, p in self.items()]
