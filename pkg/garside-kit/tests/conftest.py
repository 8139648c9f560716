"""
conftest.py

Shared pytest configuration and fixtures for the test suite.
Pins the search limits before any garside module is imported.
"""

import os
import sys

# Add the garside-kit directory to Python path
kit_path = os.path.join(os.path.dirname(__file__), "..")
if kit_path not in sys.path:
    sys.path.insert(0, kit_path)

import pytest


def pytest_configure(config):
    """Configure pytest and set up environment variables BEFORE test collection."""
    os.environ["GARSIDE_MAX_STEPS"] = "10000"
    os.environ["GARSIDE_MAX_LENGTH"] = "24"
    os.environ["GARSIDE_MAX_STATES"] = "10000"
    os.environ["GARSIDE_BALL_SLACK"] = "2"
    os.environ["GARSIDE_LOG_LEVEL"] = "WARNING"


@pytest.fixture(autouse=True)
def clean_settings():
    """Drop overrides installed by configure() or the CLI flags."""
    from garside.config import reset

    reset()
    yield
    reset()


@pytest.fixture
def braid3():
    """The braid monoid on three strands, <a, b | a b a = b a b>."""
    from fixtures import load_fixture

    return load_fixture("braid3")


@pytest.fixture
def braid3_backend(braid3):
    from garside.divisibility import select_backend

    return select_backend(braid3)


@pytest.fixture
def twomcm():
    """a and b have the two right-mcms a b and a a'."""
    from fixtures import load_fixture

    return load_fixture("twomcm")


@pytest.fixture
def twomcm_backend(twomcm):
    from garside.divisibility import select_backend

    return select_backend(twomcm)


@pytest.fixture
def absorb():
    """<a, e | e a = a, e e = 1>."""
    from fixtures import load_fixture

    return load_fixture("absorb")


@pytest.fixture
def absorb_backend(absorb):
    from garside.divisibility import select_backend

    return select_backend(absorb)


@pytest.fixture
def braid_divisors(braid3_backend):
    """Div(a b a) as a family."""
    from garside.normal_forms import Family

    return Family.from_text(braid3_backend, "1; a; b; a b; b a; a b a", name="Div(aba)")
