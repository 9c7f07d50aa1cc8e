from types import SimpleNamespace

from app import cache, celery_app
from app.services.axioms import Mode, SweepConfig
from app.tasks.tasks import soundness_sweep_task, sweep_cache_key

SMALL_SWEEP = {'models': 4, 'seed': 5, 'budget': 20, 'axioms': ['D4', 'D10b'], 'include_reference': True}


def test_cache_key_is_stable():
    config = SweepConfig(models=3, seed=1)
    assert sweep_cache_key(config) == sweep_cache_key(SweepConfig.from_dict(config.to_dict()))
    assert sweep_cache_key(config) != sweep_cache_key(SweepConfig(models=3, seed=2))


def test_task_runs_eagerly(app):
    config = SweepConfig(models=2, seed=0, budget=20, axioms=('D4',), modes=(Mode.COUNTERFACTUAL,))
    with app.app_context():
        result = soundness_sweep_task.apply_async(args=[config.to_dict()])
    assert result.successful()
    summary = result.result
    assert summary['config'] == config.to_dict()
    assert [(row['axiom'], row['mode'], row['models_failed']) for row in summary['rows']] == [('D4', 'cf', 0)]


def test_sweep_request_is_queued(client):
    response = client.post('/api/axioms/sweeps', json=SMALL_SWEEP)
    assert response.status_code == 202
    body = response.get_json()
    assert body['task_id']
    assert body['cached'] is False
    assert body['config']['models'] == 4
    rows = {(row['axiom'], row['mode']): row for row in body['summary']['rows']}
    assert rows[('D4', 'iv')]['models_failed'] == 0
    assert not any(row['surprise'] for row in rows.values())


def test_cached_summary_is_returned(client, monkeypatch):
    stored = {'rows': [], 'config': {}}
    monkeypatch.setattr(cache, 'get', lambda key: stored if key.startswith('sweep:') else None)
    response = client.post('/api/axioms/sweeps', json=SMALL_SWEEP)
    assert response.status_code == 200
    assert response.get_json() == {'success': True, 'cached': True, 'summary': stored}


def test_sweep_status(client, monkeypatch):
    states = {
        'done': SimpleNamespace(state='SUCCESS', result={'rows': []}, info=None),
        'broken': SimpleNamespace(state='FAILURE', result=None, info=RuntimeError('worker lost')),
        'waiting': SimpleNamespace(state='PENDING', result=None, info=None),
    }
    monkeypatch.setattr(celery_app, 'AsyncResult', lambda task_id: states[task_id])

    assert client.get('/api/axioms/sweeps/done').get_json() == {
        'success': True, 'state': 'SUCCESS', 'summary': {'rows': []}}
    assert client.get('/api/axioms/sweeps/broken').get_json() == {
        'success': False, 'state': 'FAILURE', 'error': 'worker lost'}
    assert client.get('/api/axioms/sweeps/waiting').get_json() == {'success': True, 'state': 'PENDING'}
