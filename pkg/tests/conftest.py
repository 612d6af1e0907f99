"""Shared fixtures and parameter-draw helpers for the test suite."""

import numpy as np
import pytest

from mollowpair.params import SystemParams


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def random_params(rng, with_detuning=False, with_second_drive=False):
    """Generic parameter draw with log-uniform couplings and drives."""
    return SystemParams(
        delta=rng.uniform(-2.0, 2.0) if with_detuning else 0.0,
        g=10 ** rng.uniform(-2, 1),
        theta=rng.uniform(0.0, 2.0 * np.pi),
        gamma=rng.uniform(0.0, 1.0),
        phi=rng.uniform(0.0, 2.0 * np.pi),
        gamma0=1.0,
        omega1=10 ** rng.uniform(-2, 1.5),
        omega2=10 ** rng.uniform(-2, 1) if with_second_drive else 0.0,
    )
