"""Quadrature grids, scattering kernels, and the string table."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from trotterxxz.errors import InvalidSize
from trotterxxz.kernels import (
    Domain,
    a_j_gapless,
    a_jk_gapless,
    a_n_gapped,
    a_nm_gapped,
    a_parity,
    build_string_table,
    convolve,
    kernel_matrix,
    make_grid,
    shifted_average,
    _composite_terms,
)
from trotterxxz.params import RootOfUnityPoint


def test_grid_weights_sum():
    g = make_grid(Domain.PERIODIC_BRILLOUIN, 64, offset=0.5)
    assert g.weights.sum() == pytest.approx(math.pi)
    line = make_grid(Domain.TRUNCATED_LINE, 101, cutoff=10.0)
    assert line.weights.sum() == pytest.approx(20.0)


def test_grid_rejects_tiny_N():
    with pytest.raises(InvalidSize):
        make_grid(Domain.PERIODIC_BRILLOUIN, 8)


@pytest.mark.parametrize("n", [1, 2, 5])
def test_a_n_gapped_normalization(n):
    """Each a_n integrates to 1 over the Brillouin zone (periodic trapezoid)."""
    g = make_grid(Domain.PERIODIC_BRILLOUIN, 256, offset=0.5)
    vals = a_n_gapped(n, g.nodes, eta=1.2).real
    assert vals @ g.weights == pytest.approx(1.0, abs=1e-12)
    assert np.all(vals > 0)


def test_a_n_gapped_evenness():
    lam = np.linspace(0.01, 1.5, 40)
    assert np.allclose(
        a_n_gapped(3, lam, eta=0.9), a_n_gapped(3, -lam, eta=0.9)
    )


@given(n=st.integers(1, 8), m=st.integers(1, 8))
def test_composite_terms_structure(n, m):
    """a_nm = (1-delta)a_|n-m| + 2a_{|n-m|+2} + ... + 2a_{n+m-2} + a_{n+m}."""
    terms = _composite_terms(n, m)
    ks = [k for _c, k in terms]
    # the |n-m| term is present only for n != m (its coefficient carries
    # the (1 - delta_nm) factor)
    lo = abs(n - m) if n != m else abs(n - m) + 2
    assert ks == list(range(lo, n + m + 1, 2))
    coeffs = {k: c for c, k in terms}
    assert coeffs[n + m] == 1
    if n != m:
        assert coeffs[abs(n - m)] == 1
    inner = [c for c, k in terms if abs(n - m) < k < n + m]
    assert all(c == 2 for c in inner)
    # total weight: integral of a_nm equals 2 min(n,m) - delta_nm
    total = sum(c for c, k in terms if k > 0)
    assert total == 2 * min(n, m) - (1 if n == m else 0)


def test_a_nm_matches_term_sum():
    lam = np.linspace(-1.2, 1.2, 17)
    eta = 0.8
    direct = sum(c * a_n_gapped(k, lam, eta) for c, k in _composite_terms(2, 3))
    assert np.allclose(a_nm_gapped(2, 3, lam, eta), direct)


# -- string table ------------------------------------------------------------


def test_string_table_pi_third():
    """gamma = pi/3 (p0 = 3): strings (1,+), (1,-), (2,+)."""
    t = build_string_table(RootOfUnityPoint(2, 1))
    assert list(t.n_j) == [1, 1, 2]
    assert list(t.upsilon_j) == [1, -1, 1]
    assert list(t.sigma_j) == [1, -1, 1]


def test_string_table_pi_quarter():
    """gamma = pi/4 (p0 = 4): strings (1,+), (2,+), (1,-), (3,+)."""
    t = build_string_table(RootOfUnityPoint(3, 1))
    assert list(t.n_j) == [1, 2, 1, 3]
    assert list(t.upsilon_j) == [1, 1, -1, 1]
    assert list(t.sigma_j) == [1, 1, -1, 1]


def test_string_table_two_fifths():
    """gamma = 2 pi/5: nu1 = 2, nu2 = 2 -> four strings incl. negative parity."""
    t = build_string_table(RootOfUnityPoint(2, 2))
    assert t.Nb == 4
    assert list(t.n_j) == [1, 1, 3, 2]
    assert list(t.upsilon_j) == [1, -1, 1, 1]
    assert list(t.sigma_j) == [1, -1, -1, 1]


def test_string_q_numbers_sign():
    for root in (RootOfUnityPoint(2, 1), RootOfUnityPoint(3, 1), RootOfUnityPoint(2, 2)):
        t = build_string_table(root)
        assert np.all(np.sign(t.q_j) == t.sigma_j)


# -- gapless kernels ---------------------------------------------------------


def test_a_parity_positive_parity_positive_kernel():
    lam = np.linspace(-3, 3, 31)
    vals = a_parity(1, 1, lam, math.pi / 3).real
    assert np.all(vals > 0)
    assert np.allclose(vals, a_parity(1, 1, -lam, math.pi / 3).real)


def test_a_parity_vanishing_numerator():
    """gamma n a multiple of pi -> identically zero kernel."""
    vals = a_parity(3, 1, np.array([0.3, 1.0]), math.pi / 3)
    assert np.all(vals == 0)


def test_a_j_gapless_consistency():
    t = build_string_table(RootOfUnityPoint(2, 1))  # gamma = pi/3
    lam = np.linspace(-2, 2, 9)
    assert np.allclose(
        a_j_gapless(1, lam, t), a_parity(1, -1, lam, math.pi / 3)
    )


def test_a_jk_gapless_symmetry():
    t = build_string_table(RootOfUnityPoint(2, 1))
    lam = np.linspace(-2, 2, 9)
    for j in range(t.Nb):
        for k in range(t.Nb):
            assert np.allclose(
                a_jk_gapless(j, k, lam, t), a_jk_gapless(k, j, lam, t)
            )


# -- convolution engine ------------------------------------------------------


def test_convolution_constant_function():
    """K * 1 = integral of the kernel: a_1 against a constant gives 1."""
    g = make_grid(Domain.PERIODIC_BRILLOUIN, 256, offset=0.5)
    from functools import partial

    out = convolve(partial(a_n_gapped, 1, eta=1.0), np.ones(g.n), g)
    assert np.allclose(out, 1.0, atol=1e-12)


def test_kernel_matrix_matches_convolve():
    g = make_grid(Domain.PERIODIC_BRILLOUIN, 64, offset=0.5)
    from functools import partial

    kern = partial(a_n_gapped, 2, eta=0.7)
    f = np.cos(2 * g.nodes)
    assert np.allclose(kernel_matrix(kern, g) @ f, convolve(kern, f, g))


def test_shifted_average_symmetric():
    f = np.cos
    lam = np.linspace(-1, 1, 11)
    avg = shifted_average(f, 0.3, lam)
    assert np.allclose(avg, np.cos(lam) * math.cos(0.3))
