from flask import Blueprint, current_app, jsonify

from app.models.pnsem import render_decimal, render_fraction
from app.services.probabilistic import (cbn_counterfactual, counterfactual_distribution,
                                        counterfactual_probability, induce_cbn, joint_probability,
                                        satisfies_p)
from app.utils.decorators import handles_engine_errors, json_body
from app.utils.parser import format_formula, parse
from app.utils.serialization import dump_distribution, dump_pmodel, load_cbn, load_pmodel
from app.utils.validation import coerce_assignment, intervention_from

probability_bp = Blueprint('probability', __name__)


def _world(pm, raw):
    return coerce_assignment(raw, pm.signature, pm.signature.variables, what='world')


def _probability(p):
    return {'exact': render_fraction(p), 'decimal': render_decimal(p)}


@probability_bp.route('/joint', methods=['POST'])
@handles_engine_errors
def joint():
    """P_M(u, v) for one world"""
    data = json_body('model', 'world')
    pm = load_pmodel(data['model'])
    p = joint_probability(pm, _world(pm, data['world']))
    return jsonify({'success': True, 'probability': _probability(p)})


@probability_bp.route('/counterfactual', methods=['POST'])
@handles_engine_errors
def counterfactual():
    """P* after refining at `world` and intervening with `do`; a single probability when `phi` is given"""
    data = json_body('model', 'world')
    pm = load_pmodel(data['model'])
    w = _world(pm, data['world'])
    iv = intervention_from(data.get('do'), pm.signature)
    max_worlds = current_app.config['MAX_WORLDS']
    if data.get('phi') is not None:
        phi = parse(data['phi'], pm.signature)
        p = counterfactual_probability(pm, w, iv, phi, max_worlds=max_worlds)
        return jsonify({'success': True, 'phi': format_formula(phi), 'probability': _probability(p)})
    dist = counterfactual_distribution(pm, w, iv, max_worlds=max_worlds)
    return jsonify({'success': True, **dump_distribution(dist)})


@probability_bp.route('/eval', methods=['POST'])
@handles_engine_errors
def evaluate():
    data = json_body('model', 'world', 'formula')
    pm = load_pmodel(data['model'])
    f = parse(data['formula'], pm.signature)
    result = satisfies_p(pm, _world(pm, data['world']), f, max_worlds=current_app.config['MAX_WORLDS'])
    return jsonify({'success': True, 'result': result, 'formula': format_formula(f)})


@probability_bp.route('/cbn', methods=['POST'])
@handles_engine_errors
def cbn():
    """CBN counterfactual; a model with exogenous variables is induced first when `induce` is set"""
    data = json_body('model', 'state')
    if data.get('induce'):
        network = induce_cbn(load_pmodel(data['model']))
    else:
        network = load_cbn(data['model'])
    sig = network.signature
    state = coerce_assignment(data['state'], sig, sig.endogenous, what='state')
    iv = intervention_from(data.get('do'), sig)
    dist = cbn_counterfactual(network, state, iv, max_worlds=current_app.config['MAX_WORLDS'])
    return jsonify({'success': True, **dump_distribution(dist)})


@probability_bp.route('/induce', methods=['POST'])
@handles_engine_errors
def induce():
    data = json_body('model')
    network = induce_cbn(load_pmodel(data['model']))
    return jsonify({'success': True, 'network': dump_pmodel(network)})
