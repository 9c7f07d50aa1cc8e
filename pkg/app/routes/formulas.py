from flask import Blueprint, current_app, jsonify

from app.errors import RequestError
from app.models.formula import is_probabilistic
from app.services.semantics import Evaluator
from app.utils.decorators import handles_engine_errors, json_body
from app.utils.formulas import desugar
from app.utils.parser import format_formula, parse
from app.utils.serialization import formula_to_dict, load_model
from app.utils.validation import build_setting

formulas_bp = Blueprint('formulas', __name__)


def _formula_text(data):
    text = data['formula']
    if not isinstance(text, str):
        raise RequestError("'formula' must be a string")
    return text


@formulas_bp.route('/parse', methods=['POST'])
@handles_engine_errors
def parse_formula():
    """Parse against the model's signature; returns the AST, canonical text and desugared core"""
    data = json_body('model', 'formula')
    m = load_model(data['model'])
    f = parse(_formula_text(data), m.signature)
    body = {'success': True, 'ast': formula_to_dict(f), 'text': format_formula(f)}
    if not is_probabilistic(f):
        body['core'] = format_formula(desugar(f))
    return jsonify(body)


@formulas_bp.route('/eval', methods=['POST'])
@handles_engine_errors
def evaluate():
    data = json_body('model', 'formula')
    m = load_model(data['model'])
    f = parse(_formula_text(data), m.signature)
    setting = build_setting(m, world=data.get('world'), context=data.get('context'),
                            state=data.get('state'))
    evaluator = Evaluator(m, max_worlds=current_app.config['MAX_WORLDS'], record=bool(data.get('trace')))
    result = evaluator.evaluate(setting, f)
    body = {
        'success': True,
        'result': result,
        'level': setting.level.value,
        'setting': setting.to_dict(),
        'formula': format_formula(f),
    }
    if evaluator.record:
        body['trace'] = evaluator.trace
    return jsonify(body)
