"""Abstract syntax of the causal language and its probabilistic extension.

Nodes are frozen dataclasses so formulas can be hashed, compared and used
as cache keys. `And`/`Or` are n-ary: the recursiveness schema expands into
disjunctions with thousands of members.
"""
from dataclasses import dataclass
from fractions import Fraction


class Formula:
    """Marker base for every AST node"""

    def __and__(self, other):
        return conj(self, other)

    def __or__(self, other):
        return disj(self, other)

    def __invert__(self):
        return Not(self)

    def __rshift__(self, other):
        return Implies(self, other)


@dataclass(frozen=True)
class Atom(Formula):
    var: str
    value: object


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    operands: tuple


@dataclass(frozen=True)
class Or(Formula):
    operands: tuple


@dataclass(frozen=True)
class Implies(Formula):
    antecedent: Formula
    consequent: Formula


@dataclass(frozen=True)
class Intervention:
    """Point intervention Y1<-y1, ..., Yk<-yk; the empty one is []"""
    pairs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'pairs', tuple((var, value) for var, value in self.pairs))
        names = [var for var, _ in self.pairs]
        if len(set(names)) != len(names):
            raise ValueError(f"Duplicate variable in intervention: {names}")

    @classmethod
    def of(cls, mapping=None, **kwargs):
        pairs = list((mapping or {}).items()) + list(kwargs.items())
        return cls(tuple(pairs))

    @property
    def variables(self):
        return tuple(var for var, _ in self.pairs)

    @property
    def key(self):
        return tuple(sorted(self.pairs, key=lambda pair: pair[0]))

    def as_dict(self):
        return dict(self.pairs)

    def extended(self, var, value):
        return Intervention(self.pairs + ((var, value),))

    def __len__(self):
        return len(self.pairs)

    def __bool__(self):
        return bool(self.pairs)

    def render(self):
        return ', '.join(f'{var}<-{render_value(value)}' for var, value in self.pairs)


@dataclass(frozen=True)
class Box(Formula):
    intervention: Intervention
    body: Formula


@dataclass(frozen=True)
class Diamond(Formula):
    intervention: Intervention
    body: Formula


@dataclass(frozen=True)
class SetBox(Formula):
    """Disjunctive intervention [Y1<-S1, ...] phi; each S_i a tuple of values"""
    assignments: tuple
    body: Formula


@dataclass(frozen=True)
class SetDiamond(Formula):
    assignments: tuple
    body: Formula


@dataclass(frozen=True)
class ProbEq(Formula):
    """psi = p for psi a basic formula or a basic causal formula"""
    subject: Formula
    probability: Fraction


def conj(*formulas):
    operands = []
    for f in formulas:
        if isinstance(f, And):
            operands.extend(f.operands)
        elif not isinstance(f, Top):
            operands.append(f)
    if not operands:
        return Top()
    if len(operands) == 1:
        return operands[0]
    return And(tuple(operands))


def disj(*formulas):
    operands = []
    for f in formulas:
        if isinstance(f, Or):
            operands.extend(f.operands)
        elif not isinstance(f, Bottom):
            operands.append(f)
    if not operands:
        return Bottom()
    if len(operands) == 1:
        return operands[0]
    return Or(tuple(operands))


def neq(var, value):
    return Not(Atom(var, value))


def box(body, mapping=None, **kwargs):
    return Box(Intervention.of(mapping, **kwargs), body)


def diamond(body, mapping=None, **kwargs):
    return Diamond(Intervention.of(mapping, **kwargs), body)


def children(f):
    if isinstance(f, Not):
        return (f.operand,)
    if isinstance(f, (And, Or)):
        return f.operands
    if isinstance(f, Implies):
        return (f.antecedent, f.consequent)
    if isinstance(f, (Box, Diamond, SetBox, SetDiamond)):
        return (f.body,)
    if isinstance(f, ProbEq):
        return (f.subject,)
    return ()


def walk(f):
    yield f
    for child in children(f):
        yield from walk(child)


MODAL_NODES = (Box, Diamond, SetBox, SetDiamond)


def is_basic(f):
    """Boolean combination of atoms, with no modality or probability"""
    return not any(isinstance(node, MODAL_NODES + (ProbEq,)) for node in walk(f))


def is_basic_causal(f):
    return isinstance(f, Box) and is_basic(f.body)


def is_probabilistic(f):
    return any(isinstance(node, ProbEq) for node in walk(f))


def render_value(value):
    if isinstance(value, str):
        return '"' + value.replace('\\', '\\\\').replace('"', '\\"') + '"'
    return str(value)


