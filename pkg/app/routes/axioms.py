from flask import Blueprint, current_app, jsonify

from app import cache, celery_app
from app.errors import RequestError
from app.services.axioms import SCHEMAS, Mode, SweepConfig, check_axiom, get_schema
from app.services.generators import RandomModelConfig
from app.tasks.tasks import soundness_sweep_task, sweep_cache_key
from app.utils.decorators import handles_engine_errors, json_body
from app.utils.serialization import load_model

axioms_bp = Blueprint('axioms', __name__)

SWEEP_FIELDS = ('models', 'seed', 'budget', 'modes', 'axioms', 'include_reference', 'keep')


def _mode(raw):
    try:
        return Mode(raw)
    except ValueError:
        raise RequestError(f"Unknown mode '{raw}'; use cf or iv")


@axioms_bp.route('/schemas', methods=['GET'])
def list_schemas():
    """Every axiom schema with the modes it is expected sound in"""
    return jsonify({'success': True, 'schemas': [s.to_dict() for s in SCHEMAS.values()]})


@axioms_bp.route('/check', methods=['POST'])
@handles_engine_errors
def check():
    data = json_body('model', 'axiom', 'mode')
    m = load_model(data['model'])
    schema = get_schema(data['axiom'])
    budget = data.get('budget', current_app.config['AXIOM_INSTANCE_BUDGET'])
    if not isinstance(budget, int) or budget < 1:
        raise RequestError("'budget' must be a positive integer")
    result = check_axiom(schema, m, _mode(data['mode']), budget=budget,
                         max_worlds=current_app.config['MAX_WORLDS'])
    return jsonify({'success': True, 'check': result.to_dict()})


def _sweep_config(data):
    overrides = {key: data[key] for key in SWEEP_FIELDS if key in data}
    if 'modes' in overrides:
        overrides['modes'] = tuple(_mode(m) for m in overrides['modes'])
    if 'axioms' in overrides:
        overrides['axioms'] = tuple(overrides['axioms'])
    for axiom in overrides.get('axioms', ()):
        get_schema(axiom)
    try:
        if 'random' in data:
            overrides['random'] = RandomModelConfig(**data['random'])
        return SweepConfig.from_app_config(current_app.config, **overrides)
    except (TypeError, ValueError) as e:
        raise RequestError(f"Invalid sweep configuration: {e}")


@axioms_bp.route('/sweeps', methods=['POST'])
@handles_engine_errors
def start_sweep():
    """Cached summary when this configuration was already swept, otherwise a queued task"""
    config = _sweep_config(json_body())
    summary = cache.get(sweep_cache_key(config))
    if summary is not None:
        return jsonify({'success': True, 'cached': True, 'summary': summary})

    task = soundness_sweep_task.apply_async(args=[config.to_dict()])
    body = {'success': True, 'cached': False, 'task_id': task.id, 'config': config.to_dict()}
    if task.ready() and task.successful():
        body['summary'] = task.result
    return jsonify(body), 202


@axioms_bp.route('/sweeps/<task_id>', methods=['GET'])
@handles_engine_errors
def sweep_status(task_id):
    task = celery_app.AsyncResult(task_id)
    if task.state == 'SUCCESS':
        return jsonify({'success': True, 'state': task.state, 'summary': task.result})
    if task.state == 'FAILURE':
        return jsonify({'success': False, 'state': task.state, 'error': str(task.info)})
    return jsonify({'success': True, 'state': task.state})
