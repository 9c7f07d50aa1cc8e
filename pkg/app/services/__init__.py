from .solver import (validate_model, is_solution, enumerate_solutions, contexts, is_refinement,
                     is_deterministic, depends_on, dependence_graph)
from .semantics import (Level, Setting, Evaluator, actualized_refinement, intervene, satisfies,
                        interventionist_oracle)
from .axioms import (Mode, AxiomSchema, SCHEMAS, SOUND_SYSTEM, SweepConfig, check_axiom, instantiate,
                     leads_to, replay, soundness_sweep)
from .probabilistic import (validate_pmodel, joint_probability, is_solution_p, state_marginal, consistent,
                            support_nsem, actualized_refinement_p, intervene_p, counterfactual_distribution,
                            counterfactual_probability, satisfies_p, induce_cbn, cbn_counterfactual)
