import os

from dotenv import load_dotenv
load_dotenv()


def _int(name, default):
    return int(os.getenv(name, default))


class Config:
    """Base configuration class"""
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')

    # Engine bounds
    MAX_WORLDS = _int('MAX_WORLDS', 4096)
    AXIOM_INSTANCE_BUDGET = _int('AXIOM_INSTANCE_BUDGET', 400)

    # Soundness sweeps
    SWEEP_MODELS = _int('SWEEP_MODELS', 200)
    SWEEP_SEED = _int('SWEEP_SEED', 0)
    RANDOM_MAX_EXOGENOUS = _int('RANDOM_MAX_EXOGENOUS', 1)
    RANDOM_MAX_ENDOGENOUS = _int('RANDOM_MAX_ENDOGENOUS', 3)
    RANDOM_MAX_RANGE = _int('RANDOM_MAX_RANGE', 2)
    RANDOM_MAX_PARENTS = _int('RANDOM_MAX_PARENTS', 2)
    RANDOM_NONDETERMINISM = float(os.getenv('RANDOM_NONDETERMINISM', '0.5'))

    # Cache & Celery
    REDIS_URL = os.getenv('REDIS_URL', 'redis://localhost:6379/0')
    CACHE_TYPE = os.getenv('CACHE_TYPE', 'SimpleCache')
    CACHE_DEFAULT_TIMEOUT = _int('CACHE_DEFAULT_TIMEOUT', 300)
    CACHE_KEY_PREFIX = 'nsem_engine_'
    CELERY_BROKER_URL = os.getenv('CELERY_BROKER_URL', REDIS_URL)
    CELERY_RESULT_BACKEND = os.getenv('CELERY_RESULT_BACKEND', REDIS_URL)
    CELERY_TASK_ALWAYS_EAGER = os.getenv('CELERY_TASK_ALWAYS_EAGER', 'false').lower() == 'true'


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'DEBUG')


class TestingConfig(Config):
    """Testing configuration"""
    TESTING = True
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'WARNING')
    CACHE_TYPE = 'NullCache'
    CELERY_BROKER_URL = 'memory://'
    CELERY_RESULT_BACKEND = 'cache+memory://'
    CELERY_TASK_ALWAYS_EAGER = True


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False
    CACHE_TYPE = os.getenv('CACHE_TYPE', 'RedisCache')
    CACHE_REDIS_URL = os.getenv('REDIS_URL', 'redis://localhost:6379/0')


config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': DevelopmentConfig
}
