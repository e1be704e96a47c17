import logging

import numpy as np
import pytest

from geoconvex.config import Tolerance
from geoconvex.domain import Interval
from geoconvex.expr.handle import FunctionHandle


@pytest.fixture
def tol():
    return Tolerance(1e-12, 1e-12)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def power_family():
    """f(x) = x^s / s with s bound per call."""
    def make(s):
        return FunctionHandle.from_source("x^s/s", {"s": s})
    return make


@pytest.fixture
def unit_to_e():
    return Interval(1.0, float(np.e))


@pytest.fixture(autouse=True)
def _no_env_tolerance(monkeypatch):
    monkeypatch.delenv("GEOCONVEX_TOL", raising=False)


@pytest.fixture(autouse=True)
def _reset_logging():
    """The CLI installs its own handler on the package logger; undo that between tests."""
    yield
    logger = logging.getLogger("geoconvex")
    logger.handlers[:] = []
    logger.propagate = True
    logger.setLevel(logging.NOTSET)
