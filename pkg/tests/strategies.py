"""Hypothesis strategies over seeded random models, worlds and formulas"""
from hypothesis import strategies as st

from app.models.formula import Atom, Box, Intervention, Not, conj, disj
from app.services.generators import RandomModelConfig, random_model, random_pmodel
from app.services.solver import enumerate_solutions

SMALL = RandomModelConfig(exogenous=1, endogenous=3, max_range=2, max_parents=2)
MEDIUM = RandomModelConfig(exogenous=1, endogenous=4, max_range=3, max_parents=2)


def shapes(bounds=SMALL):
    return st.builds(
        RandomModelConfig,
        exogenous=st.integers(0, bounds.exogenous),
        endogenous=st.integers(1, bounds.endogenous),
        max_range=st.integers(1, bounds.max_range),
        max_parents=st.integers(0, bounds.max_parents),
        nondeterminism=st.sampled_from([0.0, 0.5, 1.0]),
    )


def models(bounds=SMALL):
    return st.builds(random_model, st.integers(0, 2 ** 32 - 1), shapes(bounds))


def deterministic_models(bounds=SMALL):
    return st.builds(random_model, st.integers(0, 2 ** 32 - 1),
                     shapes(bounds).map(lambda c: RandomModelConfig(
                         c.exogenous, c.endogenous, c.max_range, c.max_parents, 0.0)))


def pmodels(bounds=SMALL):
    return st.builds(random_pmodel, st.integers(0, 2 ** 32 - 1), shapes(bounds))


@st.composite
def model_and_world(draw, bounds=SMALL):
    m = draw(models(bounds))
    return m, draw(st.sampled_from(enumerate_solutions(m)))


@st.composite
def interventions(draw, sig):
    names = draw(st.lists(st.sampled_from(sig.endogenous), unique=True))
    return Intervention(tuple((n, draw(st.sampled_from(sig.ranges[n]))) for n in names))


@st.composite
def atoms(draw, sig, names=None):
    name = draw(st.sampled_from(names or sig.endogenous))
    return Atom(name, draw(st.sampled_from(sig.ranges[name])))


def basic_formulas(sig, names=None):
    base = atoms(sig, names)
    return st.recursive(
        base,
        lambda inner: st.one_of(
            inner.map(Not),
            st.tuples(inner, inner).map(lambda p: conj(*p)),
            st.tuples(inner, inner).map(lambda p: disj(*p)),
        ),
        max_leaves=4,
    )


@st.composite
def basic_causal(draw, sig):
    return Box(draw(interventions(sig)), draw(basic_formulas(sig)))
