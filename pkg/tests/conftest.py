"""
Pytest Configuration and Fixtures
"""
import logging
import os
import numpy as np
import pytest
from src.config.settings import get_settings
from src.domain.entities.state import bell_state, product_state
from src.domain.value_objects.observable import chsh_observables
from src.domain.value_objects.probability_rule import ProbabilityRule
from src.application.services.measurement_service import assemble_box


@pytest.fixture(scope="session", autouse=True)
def setup_test_env():
    """Setup test environment variables"""
    os.environ["BELLBOX_LOG_LEVEL"] = "WARNING"
    os.environ["BELLBOX_LOG_FILE"] = ""


@pytest.fixture(autouse=True)
def reset_logging():
    """Drop handlers installed by CLI runs so they do not outlive captured streams"""
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)


@pytest.fixture
def rng():
    """Seeded generator for property checks"""
    return np.random.default_rng(get_settings().property_seed)


@pytest.fixture
def bell():
    return bell_state()


@pytest.fixture
def product():
    return product_state()


@pytest.fixture
def chsh():
    """(Alice pair, Bob pair) of CHSH observables"""
    return chsh_observables()


@pytest.fixture
def born():
    return ProbabilityRule.born()


@pytest.fixture
def bell_born_box(bell, chsh):
    alice, bob = chsh
    return assemble_box(bell, alice, bob, ProbabilityRule.born())
