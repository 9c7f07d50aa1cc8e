"""JSON codecs for models, probabilistic models, networks, worlds and formula ASTs.

The on-disk formats are described in docs/file_formats.md.
"""
import json
from fractions import Fraction

from app.errors import FormulaSyntaxError, ModelValidationError
from app.models.formula import (And, Atom, Bottom, Box, Diamond, Implies, Intervention, Not, Or, ProbEq,
                                SetBox, SetDiamond, Top)
from app.models.nsem import EquationTable, Model, ValidationReport
from app.models.pnsem import CBN, ConditionalTable, PModel, render_fraction
from app.models.signature import CausalGraph, Signature


def _malformed(message):
    return ModelValidationError(ValidationReport((message,)), f"Malformed model file: {message}")


def _read(source):
    """Accept a path, an open file, a JSON string or an already decoded dict"""
    if isinstance(source, dict):
        return source
    if hasattr(source, 'read'):
        text = source.read()
    elif isinstance(source, str) and source.lstrip().startswith('{'):
        text = source
    else:
        with open(source, encoding='utf-8') as f:
            text = f.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise _malformed(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    if not isinstance(data, dict):
        raise _malformed("top level must be an object")
    return data


def _signature(data, *, exogenous=True):
    exo = data.get('exogenous', {}) if exogenous else {}
    endo = data.get('endogenous')
    if not isinstance(exo, dict) or not isinstance(endo, dict):
        raise _malformed("'exogenous' and 'endogenous' must map variable names to lists of values")
    ranges = {}
    for name, values in list(exo.items()) + list(endo.items()):
        if not isinstance(values, list):
            raise _malformed(f"range of {name} must be a list")
        ranges[name] = values
    return Signature(exo, endo, ranges)


def _graph(data, sig):
    edges = data.get('edges', [])
    if not isinstance(edges, list) or not all(isinstance(e, list) and len(e) == 2 for e in edges):
        raise _malformed("'edges' must be a list of [parent, child] pairs")
    unknown = sorted({n for e in edges for n in e} - set(sig.variables))
    if unknown:
        raise _malformed(f"edges mention undeclared variable(s): {', '.join(map(str, unknown))}")
    return CausalGraph(sig.variables, [tuple(e) for e in edges])


def _rows(entries, name, parents, sig, decode):
    """Expand a list of {'when': ...} entries, a 'default' entry filling every row not listed"""
    if not isinstance(entries, list):
        raise _malformed(f"rows of {name} must be a list")
    rows = {}
    default = None
    for entry in entries:
        when = entry.get('when') if isinstance(entry, dict) else None
        if when == 'default':
            default = decode(entry)
            continue
        if not isinstance(when, dict):
            raise _malformed(f"row of {name} needs a 'when' object or \"default\"")
        if set(when) != set(parents):
            raise _malformed(f"row of {name} must assign exactly its parents ({', '.join(parents)})")
        key = tuple(sig.lookup_value(p, when[p]) for p in parents)
        if key in rows:
            raise _malformed(f"duplicate row {key} for {name}")
        rows[key] = decode(entry)
    if default is not None:
        for assignment in sig.assignments(parents):
            rows.setdefault(tuple(assignment[p] for p in parents), default)
    return rows


def _decode_values(name, sig):
    def decode(entry):
        values = entry.get('values')
        if not isinstance(values, list):
            raise _malformed(f"row of {name} needs a 'values' list")
        return {sig.lookup_value(name, v) for v in values}
    return decode


def parse_probability(raw):
    """Exact rational from a JSON number, a decimal string or an "a/b" string"""
    if isinstance(raw, bool) or not isinstance(raw, (int, float, str)):
        raise _malformed(f"probability {raw!r} must be a number or a string")
    try:
        return Fraction(str(raw))
    except (ValueError, ZeroDivisionError):
        raise _malformed(f"cannot read probability {raw!r}")


def _decode_cpt(name, sig):
    def decode(entry):
        cpt = entry.get('cpt')
        if not isinstance(cpt, list):
            raise _malformed(f"row of {name} needs a 'cpt' list")
        dist = {}
        for item in cpt:
            value = sig.lookup_value(name, item.get('value'))
            if value in dist:
                raise _malformed(f"value {value!r} listed twice in a row of {name}")
            dist[value] = parse_probability(item.get('prob'))
        return dist
    return decode


def load_model(source, *, validate=True):
    """NSEM from the model file format; validated on construction unless `validate` is False"""
    data = _read(source)
    sig = _signature(data)
    graph = _graph(data, sig)
    equations = data.get('equations', {})
    if not isinstance(equations, dict):
        raise _malformed("'equations' must map variables to row lists")
    tables = {}
    for name, entries in equations.items():
        if name not in sig.variables:
            raise _malformed(f"equation given for undeclared variable {name}")
        parents = graph.parents(name)
        tables[name] = EquationTable(name, parents, _rows(entries, name, parents, sig, _decode_values(name, sig)))
    return Model(sig, graph, tables, validate=validate)


def dump_model(m):
    return m.to_dict()


def _load_tables(data, sig, graph):
    tables = data.get('equations', {})
    if not isinstance(tables, dict):
        raise _malformed("'equations' must map variables to row lists")
    result = {}
    for name, entries in tables.items():
        if name not in sig.variables:
            raise _malformed(f"table given for undeclared variable {name}")
        parents = graph.parents(name)
        result[name] = ConditionalTable(name, parents, _rows(entries, name, parents, sig, _decode_cpt(name, sig)))
    return result


def load_pmodel(source, *, validate=True):
    """Probabilistic model (or, when it has no exogenous variables, a plain PModel usable as a CBN)"""
    data = _read(source)
    sig = _signature(data)
    graph = _graph(data, sig)
    return PModel(sig, graph, _load_tables(data, sig, graph), validate=validate)


def load_cbn(source):
    data = _read(source)
    if data.get('exogenous'):
        raise _malformed("a causal Bayesian network has no exogenous variables")
    sig = _signature(data, exogenous=False)
    graph = _graph(data, sig)
    return CBN(sig, graph, _load_tables(data, sig, graph))


def dump_pmodel(pm):
    return pm.to_dict()


def dump_world(w):
    return w.to_dict()


def dump_distribution(dist):
    return {'distribution': dist.to_dict(), 'total': render_fraction(dist.total())}


def dumps(data):
    """Canonical JSON text: sorted keys, two-space indent"""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


# -- formula ASTs -----------------------------------------------------------------

def _iv_to_list(iv):
    return [[var, value] for var, value in iv.pairs]


def formula_to_dict(f):
    if isinstance(f, Atom):
        return {'atom': [f.var, f.value]}
    if isinstance(f, Top):
        return {'true': True}
    if isinstance(f, Bottom):
        return {'false': True}
    if isinstance(f, Not):
        return {'not': formula_to_dict(f.operand)}
    if isinstance(f, And):
        return {'and': [formula_to_dict(op) for op in f.operands]}
    if isinstance(f, Or):
        return {'or': [formula_to_dict(op) for op in f.operands]}
    if isinstance(f, Implies):
        return {'implies': [formula_to_dict(f.antecedent), formula_to_dict(f.consequent)]}
    if isinstance(f, (Box, Diamond)):
        key = 'box' if isinstance(f, Box) else 'diamond'
        return {key: {'do': _iv_to_list(f.intervention), 'body': formula_to_dict(f.body)}}
    if isinstance(f, (SetBox, SetDiamond)):
        key = 'set_box' if isinstance(f, SetBox) else 'set_diamond'
        return {key: {'do': [[var, list(values)] for var, values in f.assignments],
                      'body': formula_to_dict(f.body)}}
    if isinstance(f, ProbEq):
        return {'prob': {'subject': formula_to_dict(f.subject), 'p': render_fraction(f.probability)}}
    raise TypeError(f"Not a formula node: {f!r}")


def formula_from_dict(data):
    if not isinstance(data, dict) or len(data) != 1:
        raise FormulaSyntaxError(f"Formula node must be an object with one key, got {data!r}")
    (key, value), = data.items()
    if key == 'atom':
        return Atom(value[0], value[1])
    if key == 'true':
        return Top()
    if key == 'false':
        return Bottom()
    if key == 'not':
        return Not(formula_from_dict(value))
    if key == 'and':
        return And(tuple(formula_from_dict(v) for v in value))
    if key == 'or':
        return Or(tuple(formula_from_dict(v) for v in value))
    if key == 'implies':
        return Implies(formula_from_dict(value[0]), formula_from_dict(value[1]))
    if key in ('box', 'diamond'):
        iv = Intervention(tuple((var, val) for var, val in value['do']))
        cls = Box if key == 'box' else Diamond
        return cls(iv, formula_from_dict(value['body']))
    if key in ('set_box', 'set_diamond'):
        assignments = tuple((var, tuple(values)) for var, values in value['do'])
        cls = SetBox if key == 'set_box' else SetDiamond
        return cls(assignments, formula_from_dict(value['body']))
    if key == 'prob':
        return ProbEq(formula_from_dict(value['subject']), Fraction(value['p']))
    raise FormulaSyntaxError(f"Unknown formula node '{key}'")
