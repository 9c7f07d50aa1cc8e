from flask import Blueprint, current_app, jsonify

from app.services.semantics import actualized_refinement, intervene
from app.services.solver import dependence_graph, enumerate_solutions, validate_model
from app.utils.decorators import handles_engine_errors, json_body
from app.utils.serialization import dump_model, dump_world, load_model
from app.utils.validation import coerce_assignment, intervention_from

models_bp = Blueprint('models', __name__)


@models_bp.route('/validate', methods=['POST'])
@handles_engine_errors
def validate():
    """Validation report for a model; an invalid model is a normal answer here"""
    data = json_body('model')
    m = load_model(data['model'], validate=False)
    report = validate_model(m)
    return jsonify({'success': True, 'valid': report.is_valid, 'report': report.to_dict()})


@models_bp.route('/solutions', methods=['POST'])
@handles_engine_errors
def solutions():
    """All solutions, optionally restricted to one context"""
    data = json_body('model')
    m = load_model(data['model'])
    ctx = data.get('context')
    if ctx is not None:
        ctx = coerce_assignment(ctx, m.signature, m.signature.exogenous, what='context')
    worlds = enumerate_solutions(m, ctx, max_worlds=current_app.config['MAX_WORLDS'])
    return jsonify({
        'success': True,
        'count': len(worlds),
        'worlds': [dump_world(w) for w in worlds],
    })


@models_bp.route('/refine', methods=['POST'])
@handles_engine_errors
def refine():
    """Actualized refinement of a model at one of its solutions"""
    data = json_body('model', 'world')
    m = load_model(data['model'])
    w = m.world(coerce_assignment(data['world'], m.signature, m.signature.variables, what='world'))
    return jsonify({'success': True, 'model': dump_model(actualized_refinement(m, w))})


@models_bp.route('/intervene', methods=['POST'])
@handles_engine_errors
def intervene_model():
    data = json_body('model', 'do')
    m = load_model(data['model'])
    iv = intervention_from(data['do'], m.signature)
    return jsonify({'success': True, 'model': dump_model(intervene(m, iv))})


@models_bp.route('/dependence-graph', methods=['POST'])
@handles_engine_errors
def dependence():
    """Graph of functional dependences, always a subgraph of the declared one"""
    data = json_body('model')
    m = load_model(data['model'])
    graph = dependence_graph(m)
    return jsonify({
        'success': True,
        'graph': graph.to_dict(),
        'declared': m.graph.to_dict(),
        'removed': [list(e) for e in sorted(set(m.graph.edges) - set(graph.edges))],
    })
