"""Parameter map (gamma, x), regime classification, and inversion."""

import cmath
import math

import pytest
from hypothesis import given, strategies as st

from conftest import DELTA_RU, TAU_THIRD, derived
from trotterxxz.errors import DegenerateParams, NoBracket
from trotterxxz.params import (
    ModelParams,
    Regime,
    RootOfUnityPoint,
    detect_root_of_unity,
    derive_params,
    tau_for_gamma,
    threshold_tau,
)


def test_threshold_formula():
    assert threshold_tau(2.5) == pytest.approx(2 * math.pi / 3.5, abs=1e-15)
    assert threshold_tau(0.0) == pytest.approx(2 * math.pi, abs=1e-15)


def test_gapped_point_classification():
    p = derived(3.0, 0.7)
    assert p.regime is Regime.GAPPED
    assert abs(p.gamma.real) < 1e-12 and p.gamma.imag > 0
    assert p.eta == pytest.approx(p.gamma.imag)
    assert abs(p.x.imag) < 1e-12  # x real in the gapped regime
    assert p.shift == pytest.approx(p.x.real)


def test_gapless_root_of_unity_point():
    p = derived(DELTA_RU, TAU_THIRD)
    assert p.regime is Regime.GAPLESS
    assert p.gamma.real == pytest.approx(math.pi / 3, abs=1e-12)
    assert abs(p.x.real) < 1e-12  # x imaginary in the gapless regime
    root = detect_root_of_unity(p.gamma.real)
    assert (root.nu1, root.nu2) == (2, 1)  # p0 = nu1 + 1/nu2 = pi/gamma = 3


def test_free_point_classification():
    p = derived(2.5, 4 * math.pi / 5)  # delta * tau = 2 pi
    assert p.regime is Regime.FREE_POINT


def test_degenerate_tau_rejected():
    with pytest.raises(DegenerateParams):
        derive_params(ModelParams(2.0, 2 * math.pi))


def test_detect_root_of_unity_two_fifths():
    root = detect_root_of_unity(2 * math.pi / 5)
    assert (root.nu1, root.nu2) == (2, 2)
    assert detect_root_of_unity(1.0) is None  # generic gamma


def test_root_point_gamma():
    assert RootOfUnityPoint(2, 1).gamma == pytest.approx(math.pi / 3)
    assert RootOfUnityPoint(3, 1).gamma == pytest.approx(math.pi / 4)
    assert RootOfUnityPoint(2, 2).gamma == pytest.approx(2 * math.pi / 5)


def test_tau_for_gamma_round_trip():
    tau = tau_for_gamma(DELTA_RU, math.pi / 3, (threshold_tau(DELTA_RU) + 1e-6, 2.5))
    assert tau == pytest.approx(TAU_THIRD, abs=1e-10)
    p = derived(DELTA_RU, tau)
    assert p.gamma.real == pytest.approx(math.pi / 3, abs=1e-10)


def test_tau_for_gamma_needs_bracket():
    with pytest.raises(NoBracket):
        tau_for_gamma(DELTA_RU, math.pi / 3, (0.1, 0.2))


@given(
    delta=st.floats(min_value=1.5, max_value=4.0),
    tau=st.floats(min_value=0.05, max_value=2.4),
)
def test_gamma_x_defining_relations(delta, tau):
    """cos gamma = sin(delta tau/2)/sin(tau/2) and sinh(x/i) = sin(gamma) tan(tau/2)."""
    p = derive_params(ModelParams(delta, tau))
    lhs = cmath.cos(p.gamma)
    rhs = math.sin(delta * tau / 2) / math.sin(tau / 2)
    assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(rhs))
    assert abs(cmath.sinh(p.x / 1j) - cmath.sin(p.gamma) * math.tan(tau / 2)) < 1e-9


@given(
    delta=st.floats(min_value=1.5, max_value=4.0),
    tau=st.floats(min_value=0.05, max_value=2.4),
)
def test_regime_gapped_below_threshold(delta, tau):
    """Below tau_th = 2 pi/(delta+1) the circuit is always in the gapped phase.

    (Above it the regime can re-enter through the free lines, so only the
    one-sided statement is universal.)
    """
    p = derive_params(ModelParams(delta, tau))
    if tau < p.tau_th - 1e-9:
        assert p.regime is Regime.GAPPED
