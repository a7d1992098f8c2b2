"""Acceptance gate: nine end-to-end criteria, one pass/fail line each.

Each criterion is a single test; run with ``pytest -v tests/test_acceptance.py``
to get one line per criterion.  Tolerances are fixed by the validation targets
and are not tightened or loosened elsewhere in the suite.
"""

import math

import numpy as np
import pytest

from conftest import DELTA_RU, TAU_THIRD, TAU_QUARTER, commutator_norm, derived
from trotterxxz import exact_small as es
from trotterxxz import tba_gapless, tba_gapped, ysystem as ys
from trotterxxz.free_fermion import (
    FreePointSpec,
    _asymptotic_integral,
    magnetization_asymptotic,
    magnetization_time,
)
from trotterxxz.observables import (
    FiniteVolumeInput,
    finite_volume_sz,
    site_mag_gapless,
    stag_mag_gapped,
)
from trotterxxz.params import detect_root_of_unity, threshold_tau
from trotterxxz.tba_gapless import sample_eta_gapless, solve_rho_gapless
from trotterxxz.tba_gapped import EtaFamilyGapped, solve_rho_gapped


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"criterion {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


def _gapped_state(delta, tau, n_max=20, N=512):
    p = derived(delta, tau)
    return solve_rho_gapped(EtaFamilyGapped(p, n_max), tba_gapped.default_grid(N))


def _gapless_state(delta, tau, N=512, cutoff=22.0):
    p = derived(delta, tau)
    root = detect_root_of_unity(p.gamma.real)
    fam = sample_eta_gapless(root, p, tba_gapless.default_grid(N, cutoff))
    return solve_rho_gapless(fam)


def test_criterion_1_trotter_threshold():
    """tau_th = 2 pi/(Delta+1); at Delta = 2.5 it is 1.7952 +- 1e-4."""
    val = threshold_tau(2.5)
    ok = abs(val - 1.7952) < 1e-4 and val == 2.0 * math.pi / 3.5
    _report("1 (Trotter threshold)", ok, f"threshold_tau(2.5) = {val:.6f}")


def test_criterion_2_free_line():
    """Free-line long-time average matches (-1)^(j+1)(|cos tau/2| - 1) to 1e-3."""
    worst_avg, worst_asym = 0.0, 0.0
    times = np.arange(10**3, 10**4 + 1)
    for delta, tau in ((2.0, math.pi), (4.0, math.pi / 2), (2.5, 4 * math.pi / 5)):
        spec = FreePointSpec.from_params(delta, tau)
        profile = magnetization_time(spec, 2000, times).mean(axis=0)
        j = np.arange(2000)
        target = (-1.0) ** (j + 1) * (abs(math.cos(tau / 2.0)) - 1.0)
        worst_avg = max(worst_avg, float(np.max(np.abs(profile - target))))
        worst_asym = max(worst_asym, abs(magnetization_asymptotic(spec, 0) - target[0]))
        if abs(spec.sinh_ix) < 1e6:
            # quadrature cross-check; skipped at tau = pi, where sinh(ix)
            # diverges and the integrand's measure-zero dip at k = 0 makes a
            # fixed-grid trapezoid overweight a single node
            worst_asym = max(
                worst_asym,
                abs(magnetization_asymptotic(spec, 0) - _asymptotic_integral(spec)),
            )
    ok = worst_avg < 1e-3 and worst_asym < 1e-12
    _report(
        "2 (free line)", ok,
        f"max |avg - closed form| = {worst_avg:.2e}, asymptotic dev = {worst_asym:.2e}",
    )


def test_criterion_3_gapped_null_result():
    """stag_mag_gapped gives |sigma-bar| < 1e-5 below threshold (n_max=20, N=512)."""
    worst = 0.0
    for delta, tau in ((3.0, 0.4), (2.5, 1.5), (3.0, 1e-3)):
        state = _gapped_state(delta, tau)
        worst = max(worst, abs(stag_mag_gapped(state).staggered))
    ok = worst < 1e-5
    _report("3 (gapped null result)", ok, f"max |sigma-bar| = {worst:.2e}")


def test_criterion_4_root_of_unity_transition():
    """gamma = pi/3: nonzero sigma-bar; ED L=12 closer to it than L=6."""
    sz_inf = site_mag_gapless(_gapless_state(DELTA_RU, TAU_THIRD)).staggered
    p = derived(DELTA_RU, TAU_THIRD)

    def diag_stag(L):
        s1 = es.diagonal_ensemble_sz(p, L, site=1)
        s2 = es.diagonal_ensemble_sz(p, L, site=2)
        return 0.5 * (s1 - s2)

    d6 = abs(diag_stag(6) - sz_inf)
    d12 = abs(diag_stag(12) - sz_inf)
    ok = abs(sz_inf) > 1e-3 and d12 < d6
    _report(
        "4 (root-of-unity transition)", ok,
        f"sigma-bar_inf = {sz_inf:.6f}, |ED-inf| L=6: {d6:.4f} -> L=12: {d12:.4f}",
    )


def test_criterion_5_circuit_consistency():
    """Dense evolution tail within 5e-2 of the same-L diagonal ensemble."""
    p = derived(DELTA_RU, TAU_THIRD)
    L = 10
    r = es.evolve_and_average(p, L, 3000)
    tail = float(np.mean(r.tail_average * (-1.0) ** np.arange(L)))
    s1 = es.diagonal_ensemble_sz(p, L, site=1)
    s2 = es.diagonal_ensemble_sz(p, L, site=2)
    diag = 0.5 * (s1 - s2)
    anti = float(np.max(np.abs(r.sz[:, 0::2] + r.sz[:, 1::2])))
    ok = abs(tail - diag) < 5e-2 and anti < 1e-12
    _report(
        "5 (circuit consistency)", ok,
        f"|tail - diagonal| = {abs(tail - diag):.2e}, antisymmetry = {anti:.2e}",
    )


def test_criterion_6_integrability_identities():
    """Charges commute with U; commuting transfer family; U = c T T; double row = 1."""
    worst = {"comm": 0.0, "tt": 0.0, "utt": 0.0, "mod": 0.0, "drow": 0.0}
    for delta, tau in ((3.0, 0.7), (DELTA_RU, TAU_THIRD)):
        p = derived(delta, tau)
        for L in (6, 8):
            U = es.build_floquet(p, L)
            for branch in (+1, -1):
                Q = es.build_charge_q1(p, L, branch)
                worst["comm"] = max(worst["comm"], commutator_norm(Q, U))
            T1 = es.build_transfer_matrix(0.23, p, L)
            T2 = es.build_transfer_matrix(0.61, p, L)
            worst["tt"] = max(worst["tt"], commutator_norm(T1, T2))
            R = es.floquet_transfer_product(p, L)
            c = np.trace(R.conj().T @ U) / np.trace(R.conj().T @ R)
            worst["utt"] = max(worst["utt"], float(np.max(np.abs(U - c * R))))
            worst["mod"] = max(worst["mod"], abs(abs(c) - 1.0))
            D0 = es.double_row_transfer(0.0, p, L)
            worst["drow"] = max(worst["drow"], float(np.max(np.abs(D0 - np.eye(2**L)))))
    ok = all(v < 1e-10 for v in worst.values())
    _report(
        "6 (integrability identities)", ok,
        ", ".join(f"{k}={v:.1e}" for k, v in worst.items()),
    )


def test_criterion_7_y_t_system_residuals():
    """T-/Y-system functional relations and the beta -> 0 closed-form limit."""
    beta = 1e-6
    lam = np.linspace(0.2, 1.4, 5)
    p = derived(3.0, 0.7)
    tf = ys.TFunctions(ys.qtm_from_params(p, beta))
    t_res = max(ys.t_system_residual(tf, j, m, lam) for j, m in ((1, 1), (2, 1), (2, 2)))
    y_res = max(ys.y_system_residual(tf, j, lam) for j in (1, 2, 3))
    fam = EtaFamilyGapped(p, 2)
    eta_res = max(
        float(np.max(np.abs(ys.eta_gapped_from_qtm(n, lam, p) - fam.eta(n, lam.astype(complex)))
                     / (1.0 + np.abs(fam.eta(n, lam.astype(complex))))))
        for n in (1, 2)
    )
    gapless_res = 0.0
    for tau in (TAU_THIRD, TAU_QUARTER):
        q = derived(DELTA_RU, tau)
        root = detect_root_of_unity(q.gamma.real)
        yfam = ys.build_y_gapless(root, q, beta)
        u = 1j * lam + 1e-9
        res = [yfam.junction_residual(u), yfam.closure_residual(u), yfam.k_residual(u)]
        res += [yfam.first_branch_residual(j, u) for j in range(1, root.nu1 - 1)]
        res += [yfam.second_branch_residual(j, u) for j in range(root.nu1, root.Nb - 1)]
        gapless_res = max(gapless_res, max(res))
    ok = t_res < 1e-8 and y_res < 1e-8 and gapless_res < 1e-7 and eta_res < 1e-6
    _report(
        "7 (Y-/T-system residuals)", ok,
        f"T={t_res:.1e}, Y={y_res:.1e}, gapless={gapless_res:.1e}, eta-limit={eta_res:.1e}",
    )


def test_criterion_8_finite_volume_formula():
    """One-magnon ED expectation equals finite_volume_sz to 1e-8 for every root."""
    worst = 0.0
    for delta, tau in ((3.0, 0.7), (DELTA_RU, TAU_THIRD)):
        p = derived(delta, tau)
        L = 8
        for m in es.one_magnon_sector(p, L):
            sz_ed = float(es.sz_expectations(m.vector, L)[0])
            sz_fv = finite_volume_sz(
                FiniteVolumeInput(np.array([m.rapidity]), L, p, m.site_parity)
            )
            worst = max(worst, abs(sz_ed - sz_fv))
    ok = worst < 1e-8
    _report("8 (finite-volume formula)", ok, f"max |sz_ed - sz_fv| = {worst:.2e}")


def test_criterion_9_sum_rules():
    """Neel filling rule within tolerance; refinement halves each residual.

    Both residuals sit far below tolerance already at the base resolution, so
    "halving" is tested as refined < max(base/2, 1e-9): once a residual hits
    the quadrature floor (~1e-14), a strict factor-of-two drop is no longer
    meaningful.
    """
    base_g = abs(_gapped_state(3.0, 0.7, n_max=10, N=256).filling_residual())
    fine_g = abs(_gapped_state(3.0, 0.7, n_max=20, N=512).filling_residual())
    base_l = abs(_gapless_state(DELTA_RU, TAU_THIRD, N=256, cutoff=18.0).filling_residual())
    fine_l = abs(_gapless_state(DELTA_RU, TAU_THIRD, N=512, cutoff=22.0).filling_residual())
    ok = (
        base_g < 2e-4 and base_l < 1e-3
        and fine_g < max(base_g / 2, 1e-9)
        and fine_l < max(base_l / 2, 1e-9)
    )
    _report(
        "9 (sum rules)", ok,
        f"gapped {base_g:.1e} -> {fine_g:.1e}, gapless {base_l:.1e} -> {fine_l:.1e}",
    )
