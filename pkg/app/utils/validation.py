from app.errors import MalformedWorldError
from app.models.formula import Intervention
from app.utils.parser import parse_pairs


def coerce_assignment(raw, signature, names, *, what='assignment'):
    """Resolve raw values (strings from flags, JSON scalars from requests) against the ranges"""
    allowed = set(names)
    resolved = {}
    for name, value in raw.items() if isinstance(raw, dict) else raw:
        if name not in allowed:
            raise MalformedWorldError(f"Unknown variable '{name}' in {what}")
        if name in resolved:
            raise MalformedWorldError(f"Variable '{name}' given twice in {what}")
        resolved[name] = signature.lookup_value(name, value)
    return resolved


def parse_assignment(text, signature, names=None, *, what='assignment'):
    """'X=1,Y="a"' as a dict over `names` (default: every variable)"""
    names = signature.variables if names is None else names
    return coerce_assignment(parse_pairs(text), signature, names, what=what)


def parse_intervention(text, signature):
    pairs = list(parse_assignment(text, signature, signature.endogenous, what='intervention').items())
    return Intervention(tuple(pairs))


def build_setting(m, *, world=None, context=None, state=None):
    """Setting from at most one raw assignment (mapping or "k=v,..." text); none means model level"""
    from app.services.semantics import Setting

    given = [(kind, raw) for kind, raw in (('world', world), ('context', context), ('state', state))
             if raw is not None]
    if len(given) > 1:
        raise MalformedWorldError("Give at most one of world, context and state")
    if not given:
        return Setting.model_only(m)
    (kind, raw), = given
    sig = m.signature
    names = {'world': sig.variables, 'context': sig.exogenous, 'state': sig.endogenous}[kind]
    if isinstance(raw, str):
        assignment = parse_assignment(raw, sig, names, what=kind)
    else:
        assignment = coerce_assignment(raw, sig, names, what=kind)
    if kind == 'world':
        return Setting.at_world(m, assignment)
    if kind == 'context':
        return Setting.at_context(m, assignment)
    return Setting.at_state(m, assignment)


def intervention_from(raw, signature):
    """Intervention from "Y=1,..." text, a mapping or None"""
    if raw is None:
        return Intervention()
    if isinstance(raw, str):
        return parse_intervention(raw, signature)
    return Intervention(tuple(coerce_assignment(raw, signature, signature.endogenous,
                                                what='intervention').items()))
