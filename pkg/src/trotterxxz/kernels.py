"""Rapidity grids, quadrature, and Bethe scattering kernels for both regimes.

Gapped kernels live on the periodic Brillouin zone [-pi/2, pi/2) and read

    a_n(lambda) = sinh(n eta) / (pi [cosh(n eta) - cos(2 lambda)]),

while at a gapless root-of-unity point the string-resolved kernels on the
full line are

    a_j(lambda) = (upsilon_j/pi) sin(gamma n_j) / [cosh(2 lambda) - upsilon_j cos(gamma n_j)].

Composite kernels a_{nm} / a_{jk} are the usual finite sums of single-string
kernels.  All kernels accept complex arguments; convolutions are dense
quadrature matrices on uniform grids (trapezoid rule, spectrally accurate on
the periodic domain).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatch, InvalidSize, PoleProximity
from .params import RootOfUnityPoint

_POLE_TOL = 1e-14


class Domain(enum.Enum):
    PERIODIC_BRILLOUIN = "periodic"  # [-pi/2, pi/2), uniform, periodic trapezoid
    TRUNCATED_LINE = "line"  # [-Lambda, Lambda], uniform trapezoid


@dataclass(frozen=True)
class Grid:
    domain: Domain
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def n(self) -> int:
        return len(self.nodes)

    def matches(self, values: np.ndarray) -> bool:
        return np.ndim(values) >= 1 and np.shape(values)[-1] == self.n


def make_grid(
    domain: Domain,
    N: int,
    cutoff: float = 20.0,
    offset: float = 0.0,
) -> Grid:
    """Uniform quadrature grid.

    ``offset`` shifts the periodic nodes by that fraction of a spacing; the
    TBA solvers use offset=0.5 so no node hits lambda = 0 or the zone edge,
    where the closed-form eta functions have poles.
    """
    if N < 16:
        raise InvalidSize(f"N = {N} < 16")
    if domain is Domain.PERIODIC_BRILLOUIN:
        h = math.pi / N
        nodes = -math.pi / 2 + (np.arange(N) + offset) * h
        weights = np.full(N, h)
    elif domain is Domain.TRUNCATED_LINE:
        nodes = np.linspace(-cutoff, cutoff, N)
        h = nodes[1] - nodes[0]
        weights = np.full(N, h)
        weights[0] = weights[-1] = h / 2
    else:
        raise InvalidSize(f"unknown domain {domain}")
    return Grid(domain, nodes, weights)


# ---------------------------------------------------------------------------
# gapped kernels


def a_n_gapped(n: int, lam, eta: float):
    """sinh(n eta)/(pi [cosh(n eta) - cos(2 lambda)]), complex-safe."""
    if n < 1 or eta <= 0:
        raise ValueError("need n >= 1 and eta > 0")
    lam = np.asarray(lam, dtype=complex)
    den = math.cosh(n * eta) - np.cos(2.0 * lam)
    if np.any(np.abs(den) < _POLE_TOL):
        raise PoleProximity(f"a_{n} evaluated at a pole")
    return math.sinh(n * eta) / (np.pi * den)


def _composite_terms(n: int, m: int) -> list[tuple[int, int]]:
    """(coefficient, k) pairs of the a_{nm} combination rule."""
    lo, hi = abs(n - m), n + m
    terms = []
    if n != m:
        terms.append((1, lo))
    for k in range(lo + 2, hi, 2):
        terms.append((2, k))
    terms.append((1, hi))
    return terms


def a_nm_gapped(n: int, m: int, lam, eta: float):
    """(1-delta_nm) a_|n-m| + 2 a_{|n-m|+2} + ... + 2 a_{n+m-2} + a_{n+m}."""
    lam = np.asarray(lam, dtype=complex)
    out = np.zeros_like(lam)
    for c, k in _composite_terms(n, m):
        out = out + c * a_n_gapped(k, lam, eta)
    return out


# ---------------------------------------------------------------------------
# gapless string data and kernels


@dataclass(frozen=True)
class StringTable:
    """String content at a root-of-unity point: lengths, parities, q-numbers."""

    root: RootOfUnityPoint
    n_j: np.ndarray  # int, quasimomenta per string
    upsilon_j: np.ndarray  # +-1 parities
    q_j: np.ndarray  # real
    sigma_j: np.ndarray  # sign(q_j)
    p_i: tuple[float, float, float] = field(default=(0.0, 0.0, 0.0))
    m_i: tuple[int, int, int] = field(default=(0, 0, 0))

    @property
    def Nb(self) -> int:
        return len(self.n_j)

    @property
    def gamma(self) -> float:
        return self.root.gamma


def build_string_table(root: RootOfUnityPoint) -> StringTable:
    """Enumerate the nu1 + nu2 strings of gamma = pi/(nu1 + 1/nu2).

    Takahashi-Suzuki classification for p0 = nu1 + 1/nu2 (1-based string
    index p):

    * 1 <= p <= nu1-1: length p, parity +, q = (1 + nu1 nu2)/nu2 - p;
    * p = nu1: length 1, parity -, q = -1 (the block-opening exception to
      the parity rule upsilon = (-1)^floor((n-1)/p0));
    * nu1 < p <= nu1+nu2-1: length 1 + (p - nu1) nu1, parity
      (-1)^(p-nu1-1), q = (p - nu1)/nu2 - 1;
    * p = nu1+nu2: length nu1, parity +, q = 1/nu2.

    sigma_p = sign(q_p); the middle block carries sigma = -1.  The q_p are
    the staircase q_p = (-1)^i (p_i - (p - m_i) p_{i+1}) with {p_i} =
    {p0, 1, 1/nu2}, {m_i} = {0, nu1, nu1 + nu2}.  For nu2 = 1 (integer p0)
    this reduces to the textbook list (1,+), ..., (nu1,+), (1,-) up to
    ordering.  The parities follow upsilon = (-1)^floor((n-1)/p0) except at
    p = nu1; both exceptional entries are fixed against the exact
    free-fermion magnetization at the free point and against exact
    diagonalization at gamma = pi/3, pi/4.
    """
    nu1, nu2 = root.nu1, root.nu2
    p0 = nu1 + 1.0 / nu2
    n_list: list[int] = []
    ups_list: list[int] = []
    q_list: list[float] = []
    for p in range(1, nu1):
        n_list.append(p)
        ups_list.append(1)
        q_list.append((1.0 + nu1 * nu2) / nu2 - p)
    for p in range(nu1, nu1 + nu2):
        n_list.append(1 + (p - nu1) * nu1)
        ups_list.append(-1 if p == nu1 else (-1) ** (p - nu1 - 1))
        q_list.append((p - nu1) / nu2 - 1.0)
    n_list.append(nu1)
    ups_list.append(1)
    q_list.append(1.0 / nu2)
    sigma = np.sign(q_list).astype(int)
    return StringTable(
        root=root,
        n_j=np.array(n_list, dtype=int),
        upsilon_j=np.array(ups_list, dtype=int),
        q_j=np.array(q_list),
        sigma_j=sigma,
        p_i=(p0, 1.0, 1.0 / nu2),
        m_i=(0, nu1, nu1 + nu2),
    )


def a_parity(n: int, upsilon: int, lam, gamma: float):
    """(upsilon/pi) sin(gamma n)/[cosh(2 lambda) - upsilon cos(gamma n)].

    When gamma*n is a multiple of pi the numerator vanishes identically and
    the kernel is zero away from the (measure-zero) pole; such terms simply
    drop from composite sums at root-of-unity points.
    """
    lam = np.asarray(lam, dtype=complex)
    if abs(math.sin(gamma * n)) < 1e-12:
        return np.zeros_like(lam)
    den = np.cosh(2.0 * lam) - upsilon * math.cos(gamma * n)
    if np.any(np.abs(den) < _POLE_TOL):
        raise PoleProximity(f"a_{n}^{upsilon:+d} evaluated at a pole")
    return (upsilon / np.pi) * math.sin(gamma * n) / den


def a_j_gapless(j: int, lam, table: StringTable, gamma: float | None = None):
    """Single-string kernel of string index j (0-based)."""
    g = table.gamma if gamma is None else gamma
    return a_parity(int(table.n_j[j]), int(table.upsilon_j[j]), lam, g)


def a_jk_gapless(j: int, k: int, lam, table: StringTable, gamma: float | None = None):
    """Composite kernel between strings j and k, parity-weighted."""
    g = table.gamma if gamma is None else gamma
    nj, nk = int(table.n_j[j]), int(table.n_j[k])
    uu = int(table.upsilon_j[j] * table.upsilon_j[k])
    lam = np.asarray(lam, dtype=complex)
    out = np.zeros_like(lam)
    for c, n in _composite_terms(nj, nk):
        if n == 0:
            continue
        out = out + c * a_parity(n, uu, lam, g)
    return out


# ---------------------------------------------------------------------------
# shifted driving terms and the convolution engine


def shifted_average(f, s, lam):
    """f^(s)(lambda) = [f(lambda + s) + f(lambda - s)]/2."""
    return 0.5 * (f(np.asarray(lam) + s) + f(np.asarray(lam) - s))


def kernel_matrix(kernel, grid: Grid) -> np.ndarray:
    """Dense quadrature matrix M with (M g)_i = integral K(mu - lambda_i) g(mu) dmu."""
    diff = grid.nodes[None, :] - grid.nodes[:, None]
    vals = np.asarray(kernel(diff))
    if np.iscomplexobj(vals):
        if np.max(np.abs(vals.imag)) > 1e-10:
            raise PoleProximity("kernel not real on the real axis")
        vals = vals.real
    return vals * grid.weights[None, :]


def convolve(kernel, g: np.ndarray, grid: Grid) -> np.ndarray:
    """(K * g)(lambda_i) by quadrature; g must be sampled on ``grid``."""
    g = np.asarray(g)
    if not grid.matches(g):
        raise GridMismatch(f"g has shape {g.shape}, grid has {grid.n} nodes")
    return kernel_matrix(kernel, grid) @ g
