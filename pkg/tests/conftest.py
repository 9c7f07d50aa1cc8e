from pathlib import Path

import pytest

from app import create_app
from app.cli import nsem
from app.utils import reference_models

SAMPLES = Path(__file__).resolve().parent.parent / 'samples'


@pytest.fixture
def app():
    return create_app('testing')


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture
def runner(app):
    cli_runner = app.test_cli_runner()

    def invoke(*args):
        return cli_runner.invoke(nsem, [str(a) for a in args])

    return invoke


@pytest.fixture
def sample():
    return lambda name: SAMPLES / name


@pytest.fixture
def model_a():
    return reference_models.model_a()


@pytest.fixture
def model_b():
    return reference_models.model_b()


@pytest.fixture
def model_c():
    return reference_models.model_c()


@pytest.fixture
def suzy():
    return reference_models.suzy()
