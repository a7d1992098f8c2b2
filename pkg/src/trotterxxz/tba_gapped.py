"""Gapped-regime stationary state: closed-form eta functions and root densities.

The late-time ensemble of the Neel quench is encoded in the ratios
eta_n = rho_n^h / rho_n, which are known in closed form:

    eta_1(l) = -1 + (1 + afrak(l - i eta/2)) (1 + 1/afrak(l + i eta/2)),
    eta_{n+1}(l) = -1 + eta_n(l + i eta/2) eta_n(l - i eta/2) / (1 + eta_{n-1}(l)),

(the half-step lattice is the one consistent with the Y-system relation
Y_n(u + gamma/2) Y_n(u - gamma/2) = (1 + Y_{n+1})(1 + Y_{n-1}) at gamma = i eta,
and is cross-checked numerically against the quantum-transfer-matrix limit).

with afrak a product of three sine ratios depending on (eta, x).  Given the
eta_n, the densities solve the linear system

    rho_n (1 + eta_n) = a_n^{(x/2)} - sum_m a_{nm} * rho_m .
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial

import numpy as np

from .errors import NegativeDensity, NoConvergence, PoleProximity, RecursionPole
from .kernels import Domain, Grid, a_n_gapped, kernel_matrix, make_grid, shifted_average
from .params import DerivedParams, Regime

_POLE_TOL = 1e-14


def _afrak_num_den(lam, eta: float, x: float):
    lam = np.asarray(lam, dtype=complex)
    num = (
        np.sin(2 * lam + 1j * eta)
        * np.sin(lam - x / 2 - 1j * eta)
        * np.sin(lam - x / 2)
    )
    den = (
        np.sin(2 * lam - 1j * eta)
        * np.sin(lam + x / 2 + 1j * eta)
        * np.sin(lam + x / 2)
    )
    return num, den


def _require_gapped(params: DerivedParams):
    if params.regime is not Regime.GAPPED or not np.isfinite(params.eta):
        raise ValueError("gapped parameters (gamma = i eta) required")


def afrak(lam, params: DerivedParams):
    """The auxiliary function entering eta_1; satisfies afrak(-l) = 1/afrak(l)."""
    _require_gapped(params)
    num, den = _afrak_num_den(lam, params.eta, params.x.real)
    if np.any(np.abs(den) < _POLE_TOL):
        raise PoleProximity("afrak evaluated at a pole")
    return num / den


def eta1(lam, params: DerivedParams):
    """Closed-form eta_1; poles of afrak cancel and are handled factor-wise."""
    _require_gapped(params)
    eta, x = params.eta, params.x.real
    lam = np.asarray(lam, dtype=complex)
    num_m, den_m = _afrak_num_den(lam - 1j * eta / 2, eta, x)
    num_p, den_p = _afrak_num_den(lam + 1j * eta / 2, eta, x)
    if np.any(np.abs(den_m) < _POLE_TOL) or np.any(np.abs(num_p) < _POLE_TOL):
        raise PoleProximity("eta_1 evaluated at a pole")
    return -1.0 + ((den_m + num_m) / den_m) * ((num_p + den_p) / num_p)


class EtaFamilyGapped:
    """Memoized evaluator of eta_n on the imaginary half-step lattice.

    eta_n at a base point set needs eta_1 at all shifts lambda + i m eta/2 with
    |m| <= n - 1; the table is filled level by level, O(n_max^2) evaluations.
    """

    def __init__(self, params: DerivedParams, n_max: int):
        _require_gapped(params)
        if n_max < 1:
            raise ValueError("n_max >= 1 required")
        self.params = params
        self.n_max = n_max

    def table(self, lam, n_max: int | None = None) -> dict:
        """All eta_n(lam + i m eta/2) with n <= n_max, |m| <= n_max - n."""
        n_max = self.n_max if n_max is None else n_max
        lam = np.asarray(lam, dtype=complex)
        step = self.params.eta / 2.0
        tab: dict[tuple[int, int], np.ndarray] = {}
        for m in range(-(n_max - 1), n_max):
            tab[(1, m)] = eta1(lam + 1j * m * step, self.params)
        for n in range(1, n_max):
            for m in range(-(n_max - 1 - n), n_max - n):
                den = 1.0 + (tab[(n - 1, m)] if n >= 2 else 0.0)
                if np.any(np.abs(den) < 1e-13):
                    raise RecursionPole(f"1 + eta_{n - 1} vanished at level {n + 1}")
                tab[(n + 1, m)] = -1.0 + tab[(n, m + 1)] * tab[(n, m - 1)] / den
        return tab

    def eta(self, n: int, lam, m_shift: int = 0):
        """eta_n(lam + i m_shift eta/2) for arbitrary complex lam."""
        if n == 0:
            return np.zeros_like(np.asarray(lam, dtype=complex))
        depth = n + abs(m_shift)
        tab = self.table(lam, n_max=depth)
        return tab[(n, m_shift)]

    def sample_real(self, grid: Grid) -> np.ndarray:
        """eta_n on the real grid, shape (n_max, N); asserts realness/evenness."""
        tab = self.table(grid.nodes)
        out = np.empty((self.n_max, grid.n))
        for n in range(1, self.n_max + 1):
            vals = tab[(n, 0)]
            # relative check: eta_n reaches ~1e6 near its poles, where the
            # recursion leaves roundoff-sized absolute imaginary parts
            if np.max(np.abs(vals.imag) / (1.0 + np.abs(vals.real))) > 1e-9:
                raise PoleProximity(f"eta_{n} not real on the real axis")
            out[n - 1] = vals.real
        return out


@dataclass
class TbaStateGapped:
    grid: Grid
    rho: np.ndarray  # (n_max, N)
    rho_h: np.ndarray
    eta_samples: np.ndarray
    eta_family: EtaFamilyGapped
    params: DerivedParams
    iterations: int

    @property
    def n_max(self) -> int:
        return self.rho.shape[0]

    def filling_residual(self) -> float:
        """1 - 2 sum_n n int rho_n; vanishes for the Neel state (magnon density 1/2)."""
        n = np.arange(1, self.n_max + 1)
        return 1.0 - 2.0 * float(n @ (self.rho @ self.grid.weights))


def default_grid(N: int = 512) -> Grid:
    # half-spacing offset keeps nodes away from the eta_n poles at 0, +-pi/2
    return make_grid(Domain.PERIODIC_BRILLOUIN, N, offset=0.5)


def _conv_matrices(eta: float, grid: Grid, k_max: int) -> list[np.ndarray]:
    return [kernel_matrix(partial(a_n_gapped, k, eta=eta), grid) for k in range(1, k_max + 1)]


def _composite_coeffs(n_max: int) -> dict[tuple[int, int], list[tuple[int, int]]]:
    from .kernels import _composite_terms

    return {
        (n, m): [(c, k) for c, k in _composite_terms(n, m) if k > 0]
        for n in range(1, n_max + 1)
        for m in range(1, n_max + 1)
    }


_DIRECT_SIZE_LIMIT = 6144  # n_max * N beyond which the dense solve is refused


def solve_rho_gapped(
    family: EtaFamilyGapped,
    grid: Grid | None = None,
    tol: float = 1e-10,
    max_iter: int = 400,
    solver: str = "krylov",
    initial: np.ndarray | None = None,
) -> TbaStateGapped:
    """Solve the linear density equations; rho_h = eta rho.

    The coupled system rho_n (1 + eta_n) + sum_m a_{nm} * rho_m = a_n^{(x/2)}
    is far from diagonally dominant (the Jacobi map has spectral radius >> 1
    already for a handful of strings), so plain damped iteration diverges.
    The default path is preconditioned LGMRES on the matrix-free operator,
    which converges in a few tens of Krylov steps; ``solver="direct"``
    assembles the dense block matrix instead (cross-check at modest sizes).
    """
    from scipy.sparse.linalg import LinearOperator, lgmres

    params = family.params
    n_max = family.n_max
    if grid is None:
        grid = default_grid()
    eta_s = family.sample_real(grid)
    x = params.x.real
    eta_val = params.eta
    N = grid.n

    drive = np.array(
        [
            shifted_average(partial(a_n_gapped, n, eta=eta_val), x / 2, grid.nodes).real
            for n in range(1, n_max + 1)
        ]
    )
    mats = _conv_matrices(eta_val, grid, 2 * n_max)
    coeffs = _composite_coeffs(n_max)

    def conv_all(rho: np.ndarray) -> np.ndarray:
        # U[k] = M_k rho_m for all strings at once, then recombine per (n, m)
        U = np.array([M @ rho.T for M in mats])  # (2 n_max, N, n_max)
        out = np.zeros((n_max, N))
        for (n, m), terms in coeffs.items():
            for c, k in terms:
                out[n - 1] += c * U[k - 1][:, m - 1]
        return out

    one_plus_eta = 1.0 + eta_s
    it = 0
    if solver == "direct":
        if n_max * N > _DIRECT_SIZE_LIMIT:
            raise NoConvergence(
                f"direct solve refused at size {n_max * N} > {_DIRECT_SIZE_LIMIT}"
            )
        A = np.zeros((n_max * N, n_max * N))
        for (n, m), terms in coeffs.items():
            blk = A[(n - 1) * N : n * N, (m - 1) * N : m * N]
            for c, k in terms:
                blk += c * mats[k - 1]
        idx = np.arange(n_max * N)
        A[idx, idx] += one_plus_eta.ravel()
        rho = np.linalg.solve(A, drive.ravel()).reshape(n_max, N)
    elif solver == "krylov":

        def matvec(z):
            r = np.asarray(z, dtype=float).reshape(n_max, N)
            return (r * one_plus_eta + conv_all(r)).ravel()

        def precond(z):
            return (np.asarray(z, dtype=float).reshape(n_max, N) / one_plus_eta).ravel()

        op = LinearOperator((n_max * N, n_max * N), matvec=matvec, dtype=float)
        pre = LinearOperator((n_max * N, n_max * N), matvec=precond, dtype=float)
        x0 = None if initial is None else initial.ravel()
        sol, info = lgmres(
            op, drive.ravel(), x0=x0, M=pre, rtol=0.01 * tol, atol=0.0, maxiter=max_iter
        )
        it = int(info)  # 0: converged within budget; >0: stopped at that count
        rho = sol.reshape(n_max, N)
    else:
        raise ValueError(f"unknown solver {solver!r}")

    resid = np.max(np.abs(rho * one_plus_eta - drive + conv_all(rho)))
    if resid > tol:
        raise NoConvergence(f"residual {resid:.3e} with solver={solver!r}")
    if rho.min() < -1e-8:
        raise NegativeDensity(f"min rho = {rho.min():.3e}")
    return TbaStateGapped(
        grid=grid,
        rho=rho,
        rho_h=eta_s * rho,
        eta_samples=eta_s,
        eta_family=family,
        params=params,
        iterations=it,
    )
