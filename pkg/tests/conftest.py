"""Shared fixtures and hypothesis settings."""
from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from ptmag import canonical_params, make_basis

settings.register_profile(
    "suite", deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def params():
    """Default working point: equal cavities at 5950 MHz, magnon at
    6000 MHz, g/2pi = 6, r/2pi = 50, phi = pi, theta = 1.1 pi."""
    return canonical_params()


@pytest.fixture(scope="session")
def basis3():
    return make_basis(3)
