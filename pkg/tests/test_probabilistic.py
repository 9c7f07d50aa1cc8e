from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from app.errors import ModelValidationError, SettingError, StructureError
from app.models import Atom, Box, ConditionalTable, Intervention, Not, PModel, ProbEq, Signature
from app.models.pnsem import CBN, render_decimal, render_fraction
from app.services.generators import RandomModelConfig, random_pmodel
from app.services.probabilistic import (actualized_refinement_p, cbn_counterfactual, consistent,
                                        counterfactual_distribution, counterfactual_probability, induce_cbn,
                                        intervene_p, is_solution_p, joint_probability, positive_worlds,
                                        satisfies_p, state_marginal, support_nsem)
from app.services.semantics import Setting, satisfies
from app.services.solver import enumerate_solutions, is_deterministic
from app.utils import reference_models
from app.utils.formulas import eval_basic
from app.utils.parser import parse
from app.utils.serialization import load_cbn, load_pmodel
from tests.strategies import basic_formulas, interventions, pmodels

H1 = Atom('H', 1)
EXOGENOUS_FREE = RandomModelConfig(exogenous=0, endogenous=3, max_range=2, max_parents=2)


@pytest.fixture
def pmodel_c():
    return reference_models.pmodel_c()


class TestJoint:
    def test_product_of_factors(self, pmodel_c):
        assert joint_probability(pmodel_c, {'X': 1, 'Y': 1}) == Fraction(3, 5)
        assert joint_probability(pmodel_c, {'X': 0, 'Y': 0}) == 0

    def test_solutions(self, pmodel_c):
        assert is_solution_p(pmodel_c, {'X': 1, 'Y': 1})
        assert not is_solution_p(pmodel_c, {'X': 0, 'Y': 1})

    @settings(max_examples=60, deadline=None)
    @given(pmodels())
    def test_joint_sums_to_one(self, pm):
        sig = pm.signature
        assert sum(joint_probability(pm, a) for a in sig.assignments(sig.variables)) == 1
        assert sum(p for _, p in positive_worlds(pm)) == 1

    def test_rows_must_sum_to_one(self):
        sig = Signature([], ['X'], {'X': (0, 1)})
        with pytest.raises(ModelValidationError):
            PModel.from_rows(sig, [], {'X': {(): {0: Fraction(1, 2), 1: Fraction(1, 3)}}})

    def test_exogenous_needs_full_support(self):
        sig = Signature(['U'], ['X'], {'U': (0, 1), 'X': (0, 1)})
        with pytest.raises(ModelValidationError):
            PModel.from_rows(sig, [('U', 'X')], {
                'U': {(): {0: 1}},
                'X': {(0,): {0: 1}, (1,): {1: 1}},
            })


class TestConsistency:
    def test_support_nsem_of_pmodel_c(self, pmodel_c, model_c):
        m = support_nsem(pmodel_c)
        assert m == model_c
        assert consistent(pmodel_c, model_c)

    def test_support_mismatch(self, pmodel_c, model_c):
        shrunk = model_c.replace(equations={'Y': model_c.equations['Y'].replace_row((1,), {1})})
        verdict = consistent(pmodel_c, shrunk)
        assert not verdict
        assert 'support of P_Y' in verdict.reason

    def test_different_signatures(self, pmodel_c, model_a):
        assert consistent(pmodel_c, model_a).reason == "models have different graphs"

    @settings(max_examples=40, deadline=None)
    @given(pmodels())
    def test_support_nsem_is_consistent(self, pm):
        assert consistent(pm, support_nsem(pm))

    def test_point_tables_give_a_deterministic_model(self, suzy):
        refined = actualized_refinement_p(suzy, {'T': 1, 'H': 1})
        assert not is_deterministic(support_nsem(suzy))
        assert is_deterministic(support_nsem(refined))
        assert is_deterministic(support_nsem(intervene_p(refined, Intervention.of(T=0))))


class TestRefinementAndIntervention:
    def test_pins_the_actual_row(self, pmodel_c):
        refined = actualized_refinement_p(pmodel_c, {'X': 1, 'Y': 1})
        assert refined.tables['Y'].distribution_for({'X': 1}) == {1: 1}
        assert refined.tables['Y'].distribution_for({'X': 0}) == {0: 1}

    def test_exogenous_rows_are_pinned_too(self):
        pm = reference_models.suzy_with_noise()
        refined = actualized_refinement_p(pm, {'U': 0, 'T': 1, 'H': 1})
        assert refined.tables['U'].distribution_for({}) == {0: 1}

    def test_zero_probability_world(self, pmodel_c):
        with pytest.raises(SettingError):
            actualized_refinement_p(pmodel_c, {'X': 0, 'Y': 0})

    def test_intervention(self, pmodel_c):
        forced = intervene_p(pmodel_c, Intervention.of(Y=1))
        assert forced.tables['Y'] == ConditionalTable.point('Y', 1)
        assert forced.graph.edges == frozenset()
        assert intervene_p(pmodel_c, Intervention()) == pmodel_c


class TestCounterfactuals:
    def test_model_c_examples(self, pmodel_c):
        assert counterfactual_probability(pmodel_c, {'X': 1, 'Y': 1}, Intervention.of(X=1), Atom('Y', 1)) == 1
        assert counterfactual_probability(pmodel_c, {'X': 1, 'Y': 0}, Intervention.of(X=0), Atom('Y', 1)) == 0

    def test_suzy(self, suzy):
        p = counterfactual_probability(suzy, {'T': 0, 'H': 0}, Intervention.of(T=1), H1)
        assert p == Fraction(4, 5)
        assert (render_fraction(p), render_decimal(p)) == ('4/5', '0.8')

    def test_suzy_distribution(self, suzy):
        dist = counterfactual_distribution(suzy, {'T': 0, 'H': 0}, Intervention.of(T=1))
        assert dist.to_dict() == [{'state': {'H': 0, 'T': 1}, 'prob': '1/5'},
                                  {'state': {'H': 1, 'T': 1}, 'prob': '4/5'}]
        assert dist.total() == 1

    def test_satisfies_p(self, suzy):
        w = {'T': 0, 'H': 0}
        assert satisfies_p(suzy, w, parse('[T<-1] H=1 = 4/5', suzy.signature))
        assert not satisfies_p(suzy, w, parse('[T<-1] H=1 = 1/2', suzy.signature))
        assert satisfies_p(suzy, w, parse('(H=0 = 1) & !(T=1 = 1)', suzy.signature))

    def test_satisfies_p_needs_a_solution(self, suzy):
        with pytest.raises(SettingError):
            satisfies_p(suzy, {'T': 0, 'H': 1}, parse('H=1 = 1', suzy.signature))

    @settings(max_examples=60, deadline=None)
    @given(pmodels(), st.data())
    def test_empty_intervention_keeps_the_actual_state(self, pm, data):
        w, _ = data.draw(st.sampled_from(positive_worlds(pm)))
        phi = data.draw(basic_formulas(pm.signature))
        p = counterfactual_probability(pm, w, Intervention(), phi)
        assert p == (1 if eval_basic(w, phi) else 0)

    @settings(max_examples=60, deadline=None)
    @given(pmodels(), st.data())
    def test_counterfactual_distributions_are_normalized(self, pm, data):
        w, _ = data.draw(st.sampled_from(positive_worlds(pm)))
        iv = data.draw(interventions(pm.signature))
        assert counterfactual_distribution(pm, w, iv).total() == 1

class TestConsistentPairs:
    def test_certain_causal_formulas_match_the_support_model(self):
        for seed in range(100):
            pm = random_pmodel(seed)
            m = support_nsem(pm)
            sig = m.signature
            atoms = [Atom(n, v) for n in sig.endogenous for v in sig.ranges[n]]
            phis = atoms + [Not(a) for a in atoms]
            ivs = [Intervention()] + [Intervention.of({n: v}) for n in sig.endogenous for v in sig.ranges[n]]
            for w in enumerate_solutions(m):
                setting = Setting.at_world(m, w)
                for iv in ivs:
                    for phi in phis:
                        psi = Box(iv, phi)
                        assert satisfies_p(pm, w, ProbEq(psi, Fraction(1))) == satisfies(setting, psi), (seed, w, psi)


class TestCausalBayesianNetworks:
    def test_marginalizes_exogenous_noise(self):
        network = induce_cbn(reference_models.suzy_with_noise())
        assert network.signature.exogenous == ()
        assert network.tables['H'].prob(1, {'T': 1}) == Fraction(4, 5)
        assert network.tables['H'].prob(1, {'T': 0}) == 0

    def test_exogenous_free_model_is_unchanged(self, suzy):
        network = induce_cbn(suzy)
        assert dict(network.tables) == dict(suzy.tables)

    def test_shared_exogenous_parent(self):
        sig = Signature(['U'], ['X', 'Y'], {'U': (0, 1), 'X': (0, 1), 'Y': (0, 1)})
        pm = PModel.from_rows(sig, [('U', 'X'), ('U', 'Y')], {
            'U': {(): {0: Fraction(1, 2), 1: Fraction(1, 2)}},
            'X': {(0,): {0: 1}, (1,): {1: 1}},
            'Y': {(0,): {0: 1}, (1,): {1: 1}},
        })
        with pytest.raises(StructureError):
            induce_cbn(pm)

    def test_suzy_both_paths(self, suzy):
        expected = {(('H', 0), ('T', 1)): Fraction(1, 5), (('H', 1), ('T', 1)): Fraction(4, 5)}
        direct = cbn_counterfactual(induce_cbn(suzy), {'T': 0, 'H': 0}, Intervention.of(T=1))
        induced = cbn_counterfactual(induce_cbn(reference_models.suzy_with_noise()), {'T': 0, 'H': 0},
                                     Intervention.of(T=1))
        assert dict(direct.probabilities) == expected
        assert dict(induced.probabilities) == expected

    def test_full_intervention_is_a_point(self, suzy):
        dist = cbn_counterfactual(induce_cbn(suzy), {'T': 1, 'H': 1}, Intervention.of(T=0, H=1))
        assert dist.items() == [({'H': 1, 'T': 0}, 1)]

    def test_state_outside_support(self, suzy):
        with pytest.raises(SettingError):
            cbn_counterfactual(induce_cbn(suzy), {'T': 0, 'H': 1}, Intervention())

    @settings(max_examples=40, deadline=None)
    @given(pmodels())
    def test_marginals_are_preserved(self, pm):
        assume(_separate_noise(pm))
        network = induce_cbn(pm)
        marginal = state_marginal(pm)
        for state in pm.signature.assignments(pm.signature.endogenous):
            assert joint_probability(network, state) == marginal[state]

    def test_extreme_case_agrees_with_the_model(self):
        for seed in range(50):
            pm = random_pmodel(seed, EXOGENOUS_FREE)
            network = induce_cbn(pm)
            sig = pm.signature
            for w, _ in positive_worlds(pm):
                for name in sig.endogenous:
                    for value in sig.ranges[name]:
                        iv = Intervention.of({name: value})
                        assert cbn_counterfactual(network, w.state_dict, iv) == \
                            counterfactual_distribution(pm, w, iv), (seed, w, iv)


def _separate_noise(pm):
    """Whether every exogenous variable has at most one child"""
    parents = [p for p, _ in pm.graph.edges if pm.signature.is_exogenous(p)]
    return len(parents) == len(set(parents))


class TestModelFiles:
    def test_sample_files_match_the_reference_models(self, sample):
        assert load_pmodel(sample('suzy.json')) == reference_models.suzy()
        assert load_pmodel(sample('suzy_noise.json')) == reference_models.suzy_with_noise()

    def test_cbn_file_refuses_exogenous_variables(self, sample):
        with pytest.raises(ModelValidationError):
            load_cbn(sample('suzy_noise.json'))
        assert isinstance(load_cbn(sample('suzy.json')), CBN)

    def test_unreadable_probability(self):
        data = {'endogenous': {'X': [0, 1]}, 'edges': [],
                'equations': {'X': [{'when': {}, 'cpt': [{'value': 0, 'prob': 'half'}]}]}}
        with pytest.raises(ModelValidationError, match="cannot read probability"):
            load_pmodel(data)

    @pytest.mark.parametrize('p, text', [
        (Fraction(4, 5), '0.8'),
        (Fraction(1, 3), '0.3333333333'),
        (Fraction(1), '1'),
        (Fraction(0), '0'),
    ])
    def test_render_decimal(self, p, text):
        assert render_decimal(p) == text
