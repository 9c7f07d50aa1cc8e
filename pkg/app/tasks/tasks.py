import json
import logging

from app import cache, celery_app
from app.services.axioms import SweepConfig, soundness_sweep

logger = logging.getLogger(__name__)


def sweep_cache_key(config):
    """Cache key of a sweep summary; equal configs share one entry"""
    return 'sweep:' + json.dumps(config.to_dict(), sort_keys=True)


@celery_app.task(bind=True, name='app.tasks.tasks.soundness_sweep_task')
def soundness_sweep_task(self, config_data):
    """Run a soundness sweep in the background and cache its summary"""
    config = SweepConfig.from_dict(config_data)
    logger.info("Sweep task %s started: %d random model(s), seed %d",
                self.request.id, config.models, config.seed)
    self.update_state(state='STARTED', meta={'status': 'Sweeping...'})

    summary = soundness_sweep(config).to_dict()
    cache.set(sweep_cache_key(config), summary)

    surprises = sum(1 for row in summary['rows'] if row['surprise'])
    logger.info("Sweep task %s finished with %d surprise(s)", self.request.id, surprises)
    return summary
