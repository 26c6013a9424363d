"""Shared fixtures.  The slow trajectories (deep-adiabatic drive, large
Fock truncation) are computed once per session and reused across files."""

import math

import pytest

from berrysim.scenarios import hybrid_point, oscillator_point


@pytest.fixture(scope="session")
def classical_points():
    """Memoized classical runs keyed by (theta, omega); B = 1 throughout."""
    cache = {}

    def get(theta, omega, branch="-"):
        key = (round(theta, 15), omega, branch)
        if key not in cache:
            cache[key] = hybrid_point(
                B=1.0, theta=theta, omega=omega, mu=0.0, j=0.0, m=None,
                branch=branch, scenario="classical", tolerance=1e-9,
                samples_per_period=400)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def hybrid_slow_point():
    """j=1/2 interior block at theta=pi/3, mu=B, deep-adiabatic drive."""
    return hybrid_point(
        B=1.0, theta=math.pi / 3.0, omega=1e-3, mu=1.0, j=0.5, m=-0.5,
        branch="-", tolerance=1e-9, samples_per_period=2000, kinematic=True)


@pytest.fixture(scope="session")
def oscillator_slow_points():
    """Both branches of the n=0 oscillator block at omega/nu = 1e-3 with
    the full n_max=60 truncation.  The slowest fixture in the suite."""
    pts = {}
    for branch in ("+", "-"):
        pts[branch] = oscillator_point(
            nu=1.0, g=1.0, beta=0.5, omega=1e-3, n=0, n_max=60,
            branch=branch, tolerance=1e-9, samples_per_period=2000,
            kinematic=(branch == "-"), truncation_check=(branch == "-"))
    return pts
