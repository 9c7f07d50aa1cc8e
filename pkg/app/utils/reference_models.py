"""Small hand-built models used in examples, sweeps and tests"""
from fractions import Fraction

from app.models.nsem import Model
from app.models.pnsem import PModel
from app.models.signature import Signature

BINARY = (0, 1)


def model_a():
    """Y -> X with X in {0,1} if Y=1 and X=0 if Y=0; Y itself free"""
    sig = Signature([], ['X', 'Y'], {'X': BINARY, 'Y': BINARY})
    return Model.from_rows(sig, [('Y', 'X')], {
        'Y': {(): {0, 1}},
        'X': {(1,): {0, 1}, (0,): {0}},
    })


def model_b():
    """A single binary endogenous X with X in {0,1}"""
    sig = Signature([], ['X'], {'X': BINARY})
    return Model.from_rows(sig, [], {'X': {(): {0, 1}}})


def model_c():
    """X = 1; Y in {0,1} if X=1 and Y=0 if X=0"""
    sig = Signature([], ['X', 'Y'], {'X': BINARY, 'Y': BINARY})
    return Model.from_rows(sig, [('X', 'Y')], {
        'X': {(): {1}},
        'Y': {(1,): {0, 1}, (0,): {0}},
    })


def model_d():
    sig = Signature([], ['X'], {'X': BINARY})
    return Model.from_rows(sig, [], {'X': {(): {1}}})


def chain_model():
    """A -> Y -> Z with A = 0 and Y, Z unconstrained; both Y~>Z and Z~>Y hold in diamond form"""
    sig = Signature([], ['A', 'Y', 'Z'], {'A': BINARY, 'Y': BINARY, 'Z': BINARY})
    return Model.from_rows(sig, [('A', 'Y'), ('Y', 'Z')], {
        'A': {(): {0}},
        'Y': {(0,): {0, 1}, (1,): {0, 1}},
        'Z': {(0,): {0, 1}, (1,): {0, 1}},
    })


def pmodel_c():
    """Model C with P_Y(1 | X=1) = 3/5"""
    sig = Signature([], ['X', 'Y'], {'X': BINARY, 'Y': BINARY})
    return PModel.from_rows(sig, [('X', 'Y')], {
        'X': {(): {1: 1}},
        'Y': {(1,): {0: Fraction(2, 5), 1: Fraction(3, 5)}, (0,): {0: 1}},
    })


def suzy():
    """Suzy throws (T) and the bottle shatters (H) with probability 4/5 when she does"""
    sig = Signature([], ['H', 'T'], {'H': BINARY, 'T': BINARY})
    return PModel.from_rows(sig, [('T', 'H')], {
        'T': {(): {0: Fraction(1, 2), 1: Fraction(1, 2)}},
        'H': {(1,): {0: Fraction(1, 5), 1: Fraction(4, 5)}, (0,): {0: 1}},
    })


def suzy_with_noise():
    """Suzy's throw with its accuracy driven by an exogenous U"""
    sig = Signature(['U'], ['H', 'T'], {'H': BINARY, 'T': BINARY, 'U': BINARY})
    return PModel.from_rows(sig, [('T', 'H'), ('U', 'H')], {
        'U': {(): {0: Fraction(1, 2), 1: Fraction(1, 2)}},
        'T': {(): {0: Fraction(1, 2), 1: Fraction(1, 2)}},
        'H': {
            (1, 1): {1: 1},
            (1, 0): {0: Fraction(2, 5), 1: Fraction(3, 5)},
            (0, 1): {0: 1},
            (0, 0): {0: 1},
        },
    })


REFERENCE_MODELS = {
    'A': model_a,
    'B': model_b,
    'C': model_c,
    'D': model_d,
    'chain': chain_model,
}
