"""T-system/Y-system functional relations of the quantum transfer matrix."""

import numpy as np
import pytest

from conftest import DELTA_RU, GAPPED_POINT, TAU_QUARTER, TAU_THIRD, TAU_TWO_FIFTHS, derived
from trotterxxz import ysystem as ys
from trotterxxz.errors import UnsupportedRoot
from trotterxxz.params import RootOfUnityPoint, detect_root_of_unity
from trotterxxz.tba_gapped import EtaFamilyGapped

BETA = 1e-6
LAM = np.linspace(0.2, 1.4, 5)


@pytest.fixture(scope="module")
def tf_gapped():
    p = derived(*GAPPED_POINT)
    return ys.TFunctions(ys.qtm_from_params(p, BETA))


def test_t_explicit_matches_recursion(tf_gapped):
    for j in (1, 2, 3):
        assert ys.t_recursion_residual(tf_gapped, j, LAM) < 1e-10


def test_t_system(tf_gapped):
    for j, m in ((1, 1), (2, 1), (2, 2), (3, 1)):
        assert ys.t_system_residual(tf_gapped, j, m, LAM) < 1e-9


def test_y_system_gapped(tf_gapped):
    for j in (1, 2, 3):
        assert ys.y_system_residual(tf_gapped, j, LAM) < 1e-9


def test_y1_two_formulas_agree(tf_gapped):
    assert ys.y1_consistency_residual(tf_gapped, LAM) < 1e-10


def test_beta_limit_recovers_closed_form_eta():
    """beta -> 0 Y_n matches the closed-form eta_n recursion (gapped)."""
    p = derived(*GAPPED_POINT)
    fam = EtaFamilyGapped(p, 2)
    for n in (1, 2):
        lim = ys.eta_gapped_from_qtm(n, LAM, p)
        closed = fam.eta(n, LAM.astype(complex))
        assert np.max(np.abs(lim - closed) / (1.0 + np.abs(closed))) < 1e-6


def test_beta_limit_requires_three_values():
    with pytest.raises(ValueError):
        ys.beta_limit(lambda b: b, betas=(1e-5, 1e-6))


@pytest.mark.parametrize(
    "tau", [TAU_THIRD, TAU_QUARTER, TAU_TWO_FIFTHS], ids=["pi3", "pi4", "2pi5"]
)
def test_truncated_y_system_gapless(tau):
    p = derived(DELTA_RU, tau)
    root = detect_root_of_unity(p.gamma.real)
    fam = ys.build_y_gapless(root, p, BETA)
    u = 1j * LAM + 1e-9
    residuals = []
    # Y_0 = 0 is a boundary convention; first-branch relations start at j = 1
    for j in range(1, root.nu1 - 1):
        residuals.append(fam.first_branch_residual(j, u))
    residuals.append(fam.junction_residual(u))
    for j in range(root.nu1, root.Nb - 1):
        residuals.append(fam.second_branch_residual(j, u))
    residuals.append(fam.closure_residual(u))
    residuals.append(fam.k_residual(u))
    assert max(residuals) < 1e-7


def test_unsupported_root_rejected():
    p = derived(DELTA_RU, TAU_THIRD)
    with pytest.raises(UnsupportedRoot):
        ys.YFamilyGapless(RootOfUnityPoint(2, 3), p, BETA)


def test_eta_gapless_rows_real_positive_first_string():
    """eta_1 of the gapless state is real and positive on the real axis."""
    p = derived(DELTA_RU, TAU_THIRD)
    root = detect_root_of_unity(p.gamma.real)
    lam = np.linspace(-2.0, 2.0, 9) + 0.05  # keep off the exact zero of eta_1
    vals = ys.eta_gapless(root, p, lam)
    assert vals.shape == (root.Nb, 9)
    assert np.all(vals[0] > 0)
