"""Shared constants and helpers for the test suite.

The tau values below put Delta = 2.5 exactly at the named root-of-unity
anisotropies gamma = pi/(nu1 + 1/nu2); they were obtained by bisecting the
cos(gamma) map to 1e-12 and are frozen here so tests agree on the points.
"""

from __future__ import annotations

import numpy as np
import pytest

from trotterxxz.params import ModelParams, derive_params

DELTA_RU = 2.5  # anisotropy used for all root-of-unity points
TAU_THIRD = 2.1490756970004417  # gamma = pi/3
TAU_QUARTER = 2.0029007401815764  # gamma = pi/4
TAU_FIFTH = 1.930981683948903  # gamma = pi/5
TAU_TWO_FIFTHS = 2.2853017707889194  # gamma = 2 pi/5

GAPPED_POINT = (3.0, 0.7)  # generic gapped point, cos(delta tau / 2) > 0
GAPPED_POINT_ALT = (2.5, 1.5)  # gapped point on the other transfer-shift branch


def derived(delta: float, tau: float):
    return derive_params(ModelParams(delta, tau))


@pytest.fixture(scope="session")
def gapped_params():
    return derived(*GAPPED_POINT)


@pytest.fixture(scope="session")
def gapless_params():
    return derived(DELTA_RU, TAU_THIRD)


def commutator_norm(A: np.ndarray, B: np.ndarray) -> float:
    return float(np.max(np.abs(A @ B - B @ A)))
