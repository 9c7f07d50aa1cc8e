"""Concrete syntax for causal formulas.

    X=1  X!=1  !phi  phi & psi  phi | psi  phi -> psi  true  false
    [X<-1, Y<-"a"] phi     <X<-1> phi     [X<-{0,1}] phi
    [T<-1] H=1 = 4/5       (probability suffix, decimal or fraction)

`&` binds tighter than `|`, which binds tighter than the right-associative
`->`; a modality applies to the unary formula that follows it.
"""
from fractions import Fraction

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from app.errors import FormulaRangeError, FormulaSyntaxError, MalformedWorldError
from app.models.formula import (And, Atom, Bottom, Box, Diamond, Implies, Intervention, Not, Or,
                                ProbEq, SetBox, SetDiamond, Top, is_basic, is_basic_causal,
                                children, is_probabilistic, render_value, walk)
from app.models.pnsem import render_fraction

FORMULA_GRAMMAR = r"""
    ?start: formula

    ?formula: implication
            | implication "=" PROB               -> prob_eq

    ?implication: disjunction ("->" implication)?

    ?disjunction: conjunction ("|" conjunction)*

    ?conjunction: unary ("&" unary)*

    ?unary: "!" unary                            -> negation
          | "[" [assignments] "]" unary          -> box
          | "<" [assignments] ">" unary          -> diamond
          | primary

    ?primary: NAME "=" value                     -> atom
            | NAME "!=" value                    -> neq
            | "true"                             -> top
            | "false"                            -> bottom
            | "(" formula ")"

    assignments: assignment ("," assignment)*

    assignment: NAME "<-" value                  -> point
              | NAME "<-" "{" value ("," value)* "}"  -> choice

    ?value: SIGNED_INT                           -> int_value
          | ESCAPED_STRING                       -> str_value

    PROB: /\d+\/\d+|\d+(\.\d+)?/

    %import common.CNAME -> NAME
    %import common.SIGNED_INT
    %import common.ESCAPED_STRING
    %import common.WS
    %ignore WS
"""

_parser = Lark(FORMULA_GRAMMAR, parser='lalr')


def _range_error(message, token):
    return FormulaRangeError(message, getattr(token, 'line', None), getattr(token, 'column', None))


@v_args(inline=True)
class _FormulaBuilder(Transformer):
    """Builds AST nodes and checks every variable and value against a signature"""

    def __init__(self, signature):
        super().__init__()
        self.signature = signature

    def _endogenous(self, name):
        if not self.signature.is_endogenous(str(name)):
            raise _range_error(f"Unknown endogenous variable '{name}'", name)
        return str(name)

    def _resolve(self, name, value):
        token, raw = value
        try:
            return self.signature.lookup_value(str(name), raw)
        except MalformedWorldError as e:
            raise _range_error(str(e), token)

    def int_value(self, token):
        return token, int(token)

    def str_value(self, token):
        return token, token[1:-1].replace('\\"', '"').replace('\\\\', '\\')

    def atom(self, name, value):
        return Atom(self._endogenous(name), self._resolve(name, value))

    def neq(self, name, value):
        return Not(self.atom(name, value))

    def top(self):
        return Top()

    def bottom(self):
        return Bottom()

    def negation(self, operand):
        return Not(operand)

    def conjunction(self, *operands):
        return And(operands)

    def disjunction(self, *operands):
        return Or(operands)

    def implication(self, antecedent, consequent):
        return Implies(antecedent, consequent)

    def point(self, name, value):
        return self._endogenous(name), self._resolve(name, value), False, name

    def choice(self, name, *values):
        resolved = tuple(self._resolve(name, v) for v in values)
        return self._endogenous(name), resolved, True, name

    def assignments(self, *items):
        seen = set()
        for var, _, _, token in items:
            if var in seen:
                raise _range_error(f"Duplicate variable '{var}' in intervention", token)
            seen.add(var)
        return items

    def _modal(self, items, body, point_cls, set_cls):
        items = items or ()
        if any(is_set for _, _, is_set, _ in items):
            assignments = tuple((var, value if is_set else (value,)) for var, value, is_set, _ in items)
            return set_cls(assignments, body)
        return point_cls(Intervention(tuple((var, value) for var, value, _, _ in items)), body)

    def box(self, items, body):
        return self._modal(items, body, Box, SetBox)

    def diamond(self, items, body):
        return self._modal(items, body, Diamond, SetDiamond)

    def prob_eq(self, subject, token):
        try:
            probability = Fraction(str(token))
        except (ValueError, ZeroDivisionError):
            raise _range_error(f"Probability {token} is not a number", token)
        if not 0 <= probability <= 1:
            raise _range_error(f"Probability {token} is outside [0, 1]", token)
        return ProbEq(subject, probability)


def _check_shape(formula):
    """Modal bodies are basic; probability assertions are not mixed with plain causal formulas"""
    for node in walk(formula):
        if isinstance(node, (Box, Diamond, SetBox, SetDiamond)) and not is_basic(node.body):
            raise FormulaSyntaxError("Modal operators cannot be nested or take probabilistic bodies")
        if isinstance(node, ProbEq):
            subject = node.subject
            if not (is_basic(subject) or is_basic_causal(subject)):
                raise FormulaSyntaxError("A probability assertion needs a basic formula or a [..] formula")
    if is_probabilistic(formula) and not _only_assertions(formula):
        raise FormulaSyntaxError("Probabilistic formulas may only combine assertions of the form psi = p")


def _only_assertions(node):
    if isinstance(node, (ProbEq, Top, Bottom)):
        return True
    if isinstance(node, (Not, And, Or, Implies)):
        return all(_only_assertions(child) for child in children(node))
    return False


def parse(text, signature):
    """Parse `text` into a causal or probabilistic causal formula over `signature`"""
    try:
        tree = _parser.parse(text)
    except UnexpectedInput as e:
        raise FormulaSyntaxError(f"Unexpected input in formula '{text}'", e.line, e.column)
    try:
        formula = _FormulaBuilder(signature).transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, FormulaSyntaxError):
            raise e.orig_exc
        raise
    _check_shape(formula)
    return formula


ASSIGNMENT_GRAMMAR = r"""
    start: [pair ("," pair)*]

    pair: NAME "=" value

    ?value: ESCAPED_STRING                       -> quoted
          | BARE                                 -> bare

    BARE: /[^\s,="]+/

    %import common.CNAME -> NAME
    %import common.ESCAPED_STRING
    %import common.WS
    %ignore WS
"""

_assignment_parser = Lark(ASSIGNMENT_GRAMMAR, parser='lalr')


@v_args(inline=True)
class _PairBuilder(Transformer):
    def start(self, *pairs):
        return [p for p in pairs if p is not None]

    def pair(self, name, value):
        return str(name), value

    def quoted(self, token):
        return token[1:-1].replace('\\"', '"').replace('\\\\', '\\')

    def bare(self, token):
        return str(token)


def parse_pairs(text):
    """'X=1, Y="a,b"' as [(name, raw value), ...]; quoted values may hold commas"""
    try:
        return _PairBuilder().transform(_assignment_parser.parse(text or ''))
    except UnexpectedInput as e:
        raise MalformedWorldError(f"Expected Var=value pairs, got '{text}' (column {e.column})")


PRECEDENCE = {ProbEq: 0, Implies: 1, Or: 2, And: 3}
UNARY = 4


def _precedence(f):
    return PRECEDENCE.get(type(f), UNARY)


def format_formula(f, context=0):
    """Render `f` in the concrete syntax; parse(format_formula(f)) rebuilds `f`"""
    text = _format(f)
    return f'({text})' if _precedence(f) < context else text


def _format(f):
    if isinstance(f, Atom):
        return f'{f.var}={render_value(f.value)}'
    if isinstance(f, Top):
        return 'true'
    if isinstance(f, Bottom):
        return 'false'
    if isinstance(f, Not):
        return '!' + format_formula(f.operand, UNARY)
    if isinstance(f, And):
        return ' & '.join(format_formula(op, UNARY) for op in f.operands)
    if isinstance(f, Or):
        return ' | '.join(format_formula(op, 3) for op in f.operands)
    if isinstance(f, Implies):
        return f'{format_formula(f.antecedent, 2)} -> {format_formula(f.consequent, 1)}'
    if isinstance(f, Box):
        return f'[{f.intervention.render()}] {format_formula(f.body, UNARY)}'
    if isinstance(f, Diamond):
        return f'<{f.intervention.render()}> {format_formula(f.body, UNARY)}'
    if isinstance(f, (SetBox, SetDiamond)):
        inner = ', '.join(f'{var}<-{{{",".join(render_value(v) for v in values)}}}'
                          for var, values in f.assignments)
        opening, closing = ('[', ']') if isinstance(f, SetBox) else ('<', '>')
        return f'{opening}{inner}{closing} {format_formula(f.body, UNARY)}'
    if isinstance(f, ProbEq):
        return f'{format_formula(f.subject, 1)} = {render_fraction(f.probability)}'
    raise TypeError(f"Not a formula node: {f!r}")
