from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from types import MappingProxyType

import networkx as nx

from app.errors import MalformedWorldError


def _freeze_ranges(ranges):
    return MappingProxyType({name: tuple(values) for name, values in sorted(ranges.items())})


@dataclass(frozen=True, eq=False)
class Signature:
    """Exogenous and endogenous variables with their finite ranges.

    Variables are kept sorted by name; values keep their declared order.
    """
    exogenous: tuple
    endogenous: tuple
    ranges: MappingProxyType

    def __init__(self, exogenous, endogenous, ranges):
        object.__setattr__(self, 'exogenous', tuple(sorted(exogenous)))
        object.__setattr__(self, 'endogenous', tuple(sorted(endogenous)))
        object.__setattr__(self, 'ranges', _freeze_ranges(ranges))

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return (self.exogenous == other.exogenous
                and self.endogenous == other.endogenous
                and dict(self.ranges) == dict(other.ranges))

    __hash__ = None

    @cached_property
    def variables(self):
        return tuple(sorted(self.exogenous + self.endogenous))

    def is_exogenous(self, name):
        return name in self.exogenous

    def is_endogenous(self, name):
        return name in self.endogenous

    def range_of(self, name):
        try:
            return self.ranges[name]
        except KeyError:
            raise MalformedWorldError(f"Unknown variable '{name}'")

    def lookup_value(self, name, raw):
        """Resolve a raw value (e.g. from a formula or a flag) against the range of `name`."""
        values = self.range_of(name)
        for value in values:
            if value == raw and type(value) is type(raw):
                return value
        for value in values:
            if str(value) == str(raw):
                return value
        raise MalformedWorldError(f"Value {raw!r} is not in the range of '{name}'")

    def index_of(self, name, value):
        return self.ranges[name].index(value)

    def order_values(self, name, values):
        """Return `values` in the declared range order of `name`"""
        return tuple(v for v in self.ranges[name] if v in values)

    def assignments(self, names):
        """Every total assignment over `names`, in canonical order"""
        names = tuple(names)
        for combo in product(*(self.ranges[n] for n in names)):
            yield dict(zip(names, combo))

    def count_worlds(self, names=None):
        total = 1
        for name in (self.variables if names is None else names):
            total *= len(self.ranges[name])
        return total

    def check_assignment(self, assignment, names, *, total=True):
        unknown = sorted(set(assignment) - set(names), key=str)
        if unknown:
            raise MalformedWorldError(f"Unknown variable(s): {', '.join(map(str, unknown))}")
        if total:
            missing = sorted(set(names) - set(assignment))
            if missing:
                raise MalformedWorldError(f"Missing value(s) for: {', '.join(missing)}")
        for name, value in assignment.items():
            if value not in self.ranges[name]:
                raise MalformedWorldError(f"Value {value!r} is not in the range of '{name}'")

    def violations(self):
        problems = []
        overlap = set(self.exogenous) & set(self.endogenous)
        if overlap:
            problems.append(f"variables both exogenous and endogenous: {', '.join(sorted(overlap))}")
        for name in self.variables:
            values = self.ranges.get(name)
            if values is None:
                problems.append(f"no range for {name}")
            elif not values:
                problems.append(f"empty range for {name}")
            elif len(set(values)) != len(values):
                problems.append(f"duplicate values in range of {name}")
        for name in self.ranges:
            if name not in self.variables:
                problems.append(f"range given for undeclared variable {name}")
        return problems

    def restrict(self, names):
        """Signature over the endogenous/exogenous variables listed in `names`"""
        keep = set(names)
        return Signature(
            [n for n in self.exogenous if n in keep],
            [n for n in self.endogenous if n in keep],
            {n: v for n, v in self.ranges.items() if n in keep},
        )

    def to_dict(self):
        return {
            'exogenous': {n: list(self.ranges[n]) for n in self.exogenous},
            'endogenous': {n: list(self.ranges[n]) for n in self.endogenous},
        }


@dataclass(frozen=True, eq=False)
class CausalGraph:
    """Directed parent -> child graph over the variables of a signature"""
    nodes: tuple
    edges: frozenset = field(default_factory=frozenset)

    def __init__(self, nodes, edges=()):
        object.__setattr__(self, 'nodes', tuple(sorted(nodes)))
        object.__setattr__(self, 'edges', frozenset((p, c) for p, c in edges))

    def __eq__(self, other):
        if not isinstance(other, CausalGraph):
            return NotImplemented
        return self.nodes == other.nodes and self.edges == other.edges

    __hash__ = None

    @cached_property
    def digraph(self):
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(sorted(self.edges))
        return graph

    def parents(self, node):
        return tuple(sorted(p for p, c in self.edges if c == node))

    def is_acyclic(self):
        return nx.is_directed_acyclic_graph(self.digraph)

    def find_cycle(self):
        try:
            return [edge[0] for edge in nx.find_cycle(self.digraph)]
        except nx.NetworkXNoCycle:
            return None

    def topological_order(self):
        return tuple(nx.lexicographical_topological_sort(self.digraph))

    def descendants(self, node):
        return frozenset(nx.descendants(self.digraph, node))

    def ancestors(self, node):
        return frozenset(nx.ancestors(self.digraph, node))

    def without_incoming(self, targets):
        targets = set(targets)
        return CausalGraph(self.nodes, {(p, c) for p, c in self.edges if c not in targets})

    def restrict(self, names):
        keep = set(names)
        return CausalGraph([n for n in self.nodes if n in keep],
                           {(p, c) for p, c in self.edges if p in keep and c in keep})

    def is_subgraph_of(self, other):
        return set(self.nodes) == set(other.nodes) and self.edges <= other.edges

    def to_dict(self):
        return {'nodes': list(self.nodes), 'edges': [list(e) for e in sorted(self.edges)]}
