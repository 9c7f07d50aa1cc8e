# Models package
from .signature import Signature, CausalGraph
from .nsem import EquationTable, Model, World, ValidationReport, Verdict, sort_worlds
from .formula import (Formula, Atom, Top, Bottom, Not, And, Or, Implies, Intervention,
                      Box, Diamond, SetBox, SetDiamond, ProbEq, conj, disj, neq, box, diamond)
from .pnsem import ConditionalTable, PModel, CBN, CounterfactualDistribution
