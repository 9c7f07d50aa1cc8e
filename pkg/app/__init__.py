import logging
import sys

from flask import Flask
from flask_cors import CORS
from flask_caching import Cache
from config import config
from celery import Celery
from dotenv import load_dotenv

load_dotenv()

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

# Initialize extensions
cache = Cache()

# Create celery instance at module level
celery_app = Celery('nsem_engine')


def make_celery(app):
    celery_app.conf.update(
        broker_url=app.config['CELERY_BROKER_URL'],
        result_backend=app.config['CELERY_RESULT_BACKEND'],
        task_serializer='json',
        accept_content=['json'],
        result_serializer='json',
        timezone='UTC',
        enable_utc=True,
        task_always_eager=app.config['CELERY_TASK_ALWAYS_EAGER'],
        task_store_eager_result=True,
    )

    class ContextTask(celery_app.Task):
        def __call__(self, *args, **kwargs):
            with app.app_context():
                return self.run(*args, **kwargs)

    celery_app.Task = ContextTask
    return celery_app


def configure_logging(app):
    """One stderr handler on the `app` logger; stdout stays reserved for command output"""
    logger = logging.getLogger('app')
    logger.setLevel(app.config['LOG_LEVEL'])
    if not any(getattr(h, '_nsem', False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._nsem = True
        logger.addHandler(handler)
    logger.propagate = False


def create_app(config_name='default'):
    """Application factory function"""
    app = Flask(__name__)

    # Load configuration
    app.config.from_object(config[config_name])
    configure_logging(app)

    # Initialize extensions
    cache.init_app(app)
    CORS(app)

    # Configure celery
    make_celery(app)

    # Register blueprints
    from app.routes.models import models_bp
    from app.routes.formulas import formulas_bp
    from app.routes.axioms import axioms_bp
    from app.routes.probability import probability_bp
    app.register_blueprint(models_bp, url_prefix='/api/models')
    app.register_blueprint(formulas_bp, url_prefix='/api/formulas')
    app.register_blueprint(axioms_bp, url_prefix='/api/axioms')
    app.register_blueprint(probability_bp, url_prefix='/api/probability')

    from app.cli import nsem
    app.cli.add_command(nsem)
    return app
