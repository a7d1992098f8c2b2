"""Gapless root-of-unity stationary state: densities on the rapidity line.

The finitely many string species of gamma = pi/(nu1 + 1/nu2) satisfy

    sign(q_m) rho_m (1 + eta_m) = a_m^{(s/2)} - sum_n a_{mn} * rho_n ,

with s = Im(x) the real driving shift and the eta_m supplied by the
truncated Y-system (ysystem module).  The structure mirrors the gapped
solver: LGMRES on the matrix-free operator, dense direct solve as the
cross-checking alternative.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial

import numpy as np

from .errors import NegativeDensity, NoConvergence
from .kernels import (
    Domain,
    Grid,
    StringTable,
    a_j_gapless,
    a_jk_gapless,
    build_string_table,
    kernel_matrix,
    make_grid,
    shifted_average,
)
from .params import DerivedParams, Regime, RootOfUnityPoint
from .ysystem import eta_gapless


@dataclass
class EtaFamilyGapless:
    """eta_j sampled on a line grid, shape (Nb, N), with provenance."""

    root: RootOfUnityPoint
    params: DerivedParams
    grid: Grid
    samples: np.ndarray
    swap_last: bool

    @property
    def Nb(self) -> int:
        return self.root.Nb


def sample_eta_gapless(
    root: RootOfUnityPoint,
    params: DerivedParams,
    grid: Grid,
    swap_last: bool = False,
    tol: float = 1e-7,
) -> EtaFamilyGapless:
    vals = eta_gapless(root, params, grid.nodes, tol=tol, swap_last=swap_last)
    return EtaFamilyGapless(root=root, params=params, grid=grid, samples=vals, swap_last=swap_last)


@dataclass
class TbaStateGapless:
    grid: Grid
    table: StringTable
    rho: np.ndarray  # (Nb, N)
    rho_h: np.ndarray
    eta_family: EtaFamilyGapless
    params: DerivedParams
    iterations: int

    @property
    def Nb(self) -> int:
        return self.rho.shape[0]

    def filling_residual(self) -> float:
        """1 - 2 sum_j n_j int rho_j; vanishes for the Neel state."""
        n = self.table.n_j.astype(float)
        return 1.0 - 2.0 * float(n @ (self.rho @ self.grid.weights))


def default_grid(N: int = 1024, cutoff: float = 20.0) -> Grid:
    return make_grid(Domain.TRUNCATED_LINE, N, cutoff=cutoff)


def solve_rho_gapless(
    family: EtaFamilyGapless,
    table: StringTable | None = None,
    tol: float = 1e-10,
    max_iter: int = 400,
    solver: str = "krylov",
    initial: np.ndarray | None = None,
) -> TbaStateGapless:
    """Solve the signed linear density system; rho_h = eta rho."""
    from scipy.sparse.linalg import LinearOperator, lgmres

    params = family.params
    if params.regime not in (Regime.GAPLESS, Regime.FREE_POINT):
        raise ValueError("gapless parameters required")
    if table is None:
        table = build_string_table(family.root)
    grid = family.grid
    Nb, N = family.Nb, grid.n
    eta_s = family.samples
    s_half = params.shift / 2.0  # Im(x)/2, real

    drive = np.array(
        [
            shifted_average(partial(a_j_gapless, j, table=table), s_half, grid.nodes).real
            for j in range(Nb)
        ]
    )
    mats = [
        [kernel_matrix(partial(a_jk_gapless, m, n, table=table), grid) for n in range(Nb)]
        for m in range(Nb)
    ]
    diag = table.sigma_j[:, None] * (1.0 + eta_s)  # signed effective diagonal

    def conv_all(rho: np.ndarray) -> np.ndarray:
        out = np.zeros((Nb, N))
        for m in range(Nb):
            for n in range(Nb):
                out[m] += mats[m][n] @ rho[n]
        return out

    it = 0
    if solver == "direct":
        A = np.zeros((Nb * N, Nb * N))
        for m in range(Nb):
            for n in range(Nb):
                A[m * N : (m + 1) * N, n * N : (n + 1) * N] = mats[m][n]
        idx = np.arange(Nb * N)
        A[idx, idx] += diag.ravel()
        rho = np.linalg.solve(A, drive.ravel()).reshape(Nb, N)
    elif solver == "krylov":

        def matvec(z):
            r = np.asarray(z, dtype=float).reshape(Nb, N)
            return (r * diag + conv_all(r)).ravel()

        def precond(z):
            return (np.asarray(z, dtype=float).reshape(Nb, N) / diag).ravel()

        op = LinearOperator((Nb * N, Nb * N), matvec=matvec, dtype=float)
        pre = LinearOperator((Nb * N, Nb * N), matvec=precond, dtype=float)
        x0 = None if initial is None else initial.ravel()
        sol, info = lgmres(
            op, drive.ravel(), x0=x0, M=pre, rtol=0.01 * tol, atol=0.0, maxiter=max_iter
        )
        it = int(info)
        rho = sol.reshape(Nb, N)
    else:
        raise ValueError(f"unknown solver {solver!r}")

    resid = np.max(np.abs(rho * diag + conv_all(rho) - drive))
    if resid > tol:
        raise NoConvergence(f"residual {resid:.3e} with solver={solver!r}")
    if rho.min() < -1e-8:
        raise NegativeDensity(f"min rho = {rho.min():.3e}")
    return TbaStateGapless(
        grid=grid,
        table=table,
        rho=rho,
        rho_h=eta_s * rho,
        eta_family=family,
        params=params,
        iterations=it,
    )
