# Utils package
from .parser import parse, format_formula
from .formulas import desugar, desugar_diamond, desugar_disjunctive, eval_basic
from .serialization import (load_model, dump_model, load_pmodel, load_cbn, dump_pmodel, dump_world,
                            dump_distribution, formula_to_dict, formula_from_dict, dumps)
from .validation import parse_assignment, parse_intervention, coerce_assignment
from .decorators import handles_engine_errors, json_body
