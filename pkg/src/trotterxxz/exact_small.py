"""Dense finite-size oracle for the brickwork circuit.

Everything here is exact at small L: the two-site gate and Floquet operator,
the first conserved charge pair, the inhomogeneous row-to-row transfer
matrix, stepwise statevector evolution from the Neel state, the diagonal
(infinite-time-average) ensemble in the symmetry sector of the initial
state, and the one-magnon Bethe sector with its quantization roots.

Conventions: sites are 1-indexed in formulas, 0-indexed in code; qubit 0 is
the leftmost tensor factor; |0> is the sigma^z = +1 state, so the Neel state
|01 01 ...> has <sigma^z_j> = (-1)^{j+1} with site 1 (code index 0) up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DegeneracyUnresolved, RootMatchFailed, SizeBudgetExceeded
from .params import DerivedParams, ModelParams, derive_params

_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)
_ID = np.eye(2, dtype=complex)

MAX_L_DENSE = 14
MAX_L_DIAG = 12
MAX_L_MAGNON = 14


def _check_L(L: int, limit: int, what: str):
    if L % 2 or L < 2:
        raise ValueError(f"L = {L} must be even and >= 2")
    if L > limit:
        raise SizeBudgetExceeded(f"{what}: L = {L} exceeds budget {limit}")


def _coerce(params) -> DerivedParams:
    if isinstance(params, ModelParams):
        return derive_params(params)
    return params


# ---------------------------------------------------------------------------
# gates, Floquet operator, evolution


def build_gate(params, as_matrix: bool = True) -> np.ndarray:
    """Two-site gate V = exp(-i tau/4 [XX + YY + Delta(ZZ - 1)]) as a 4x4."""
    from scipy.linalg import expm

    p = _coerce(params)
    h2 = (
        np.kron(_SX, _SX)
        + np.kron(_SY, _SY)
        + p.delta * (np.kron(_SZ, _SZ) - np.eye(4))
    )
    return expm(-0.25j * p.tau * h2)


def _apply_even_pairs(psi: np.ndarray, V: np.ndarray, L: int) -> np.ndarray:
    """Apply V to pairs (0,1), (2,3), ... of the L-qubit state."""
    out = psi.reshape((4,) * (L // 2))
    Vt = V.reshape(4, 4)
    for slot in range(L // 2):
        out = np.tensordot(Vt, out, axes=([1], [slot]))
        out = np.moveaxis(out, 0, slot)
    return out.reshape(-1)


def _roll_qubits(psi: np.ndarray, L: int, shift: int) -> np.ndarray:
    """Cyclically relabel qubits j -> j + shift."""
    t = psi.reshape((2,) * L)
    order = [(j - shift) % L for j in range(L)]
    return np.transpose(t, order).reshape(-1)


def apply_floquet(psi: np.ndarray, params, L: int) -> np.ndarray:
    """One step U = U_e U_o applied gate-wise (U_o holds the wrap gate V_{L,1})."""
    _check_L(L, MAX_L_DENSE, "apply_floquet")
    V = build_gate(params)
    # U_o: pairs (2,3), (4,5), ..., (L,1) in 1-indexing = even pairs after a
    # one-site relabeling
    psi = _roll_qubits(psi, L, -1)
    psi = _apply_even_pairs(psi, V, L)
    psi = _roll_qubits(psi, L, 1)
    # U_e: pairs (1,2), (3,4), ...
    return _apply_even_pairs(psi, V, L)


def build_floquet(params, L: int) -> np.ndarray:
    """Dense 2^L x 2^L Floquet operator."""
    _check_L(L, MAX_L_DENSE if L <= 10 else 10, "build_floquet (dense)")
    dim = 2**L
    U = np.empty((dim, dim), dtype=complex)
    for c in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[c] = 1.0
        U[:, c] = apply_floquet(e, params, L)
    return U


def neel_state(L: int) -> np.ndarray:
    """|0 1 0 1 ...> with site 1 (qubit 0) holding |0>."""
    _check_L(L, MAX_L_MAGNON, "neel_state")
    idx = 0
    for j in range(L):
        idx = 2 * idx + (j % 2)
    psi = np.zeros(2**L, dtype=complex)
    psi[idx] = 1.0
    return psi


def sz_expectations(psi: np.ndarray, L: int) -> np.ndarray:
    """<sigma^z_j> for all sites, from the computational-basis amplitudes."""
    probs = np.abs(psi) ** 2
    idx = np.arange(len(psi))
    out = np.empty(L)
    for j in range(L):
        bits = (idx >> (L - 1 - j)) & 1
        out[j] = np.sum(probs * (1 - 2 * bits))
    return out


@dataclass
class EvolutionResult:
    times: np.ndarray
    sz: np.ndarray  # (steps + 1, L)
    tail_average: np.ndarray  # (L,), averaged over the window
    window: tuple


def evolve_and_average(params, L: int, steps: int, window: tuple | None = None) -> EvolutionResult:
    """Stepwise circuit evolution of the Neel state; per-site sigma^z record."""
    _check_L(L, MAX_L_DENSE, "evolve_and_average")
    if steps > 10**5:
        raise SizeBudgetExceeded(f"steps = {steps} exceeds 1e5")
    if window is None:
        window = (steps // 2, steps)
    psi = neel_state(L)
    rec = np.empty((steps + 1, L))
    rec[0] = sz_expectations(psi, L)
    for t in range(1, steps + 1):
        psi = apply_floquet(psi, params, L)
        rec[t] = sz_expectations(psi, L)
    lo, hi = window
    return EvolutionResult(
        times=np.arange(steps + 1, dtype=float),
        sz=rec,
        tail_average=rec[lo : hi + 1].mean(axis=0),
        window=window,
    )


# ---------------------------------------------------------------------------
# conserved charges


def _site_op(ops: dict[int, np.ndarray], L: int) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for j in range(L):
        out = np.kron(out, ops.get(j, _ID))
    return out


def build_charge_q1(params, L: int, branch: int = +1) -> np.ndarray:
    """First conserved charge Q_1^+/Q_1^- (Hermitian normalization).

    Q_1^+- is the u-derivative of log T(u) at the two shift points
    u = theta/2 and u = -gamma - theta/2 of the staggered transfer matrix
    (theta = transfer_shift(params)); the matrix elements below reproduce
    that log-derivative exactly.  It is a sum of uniform two-site XX+YY and
    ZZ couplings plus three-site terms supported on one sublattice only
    (odd code sites j = 1, 3, ... open the triple for branch +1, even sites
    for branch -1).  The branch -1 charge carries the opposite sign on the
    achiral couplings while the chiral Dzyaloshinskii-Moriya-type terms keep
    theirs; this is what the log-derivative at the second point produces,
    and it is not a pure one-site translate of the branch +1 charge.  The
    transfer-matrix normalization carries an overall phase that is removed
    so the coefficients are real and the operator Hermitian in both regimes;
    this does not affect the commutation with U.  At x = 0 the result is
    proportional to the XXZ Hamiltonian with Delta' = cos(gamma).
    """
    _check_L(L, 10, "build_charge_q1")
    p = _coerce(params)
    g = p.gamma
    th = transfer_shift(p)
    den = np.cos(2 * th) - np.cos(2 * g)
    # Hermitizing global phase: rotate so the ZZ coefficient is real
    zeta = np.exp(-1j * np.angle(np.sin(g) * np.cos(g) / den))
    s = 1.0 if branch > 0 else -1.0
    c_xy = s * (zeta * np.sin(g) * np.cos(th) / den).real
    c_zz = s * (zeta * np.sin(g) * np.cos(g) / den).real
    c_hop = s * (-zeta * np.cos(g) * np.sin(th) ** 2 / (np.sin(g) * den)).real
    c_dm1 = (-zeta * 1j * np.sin(th) * np.cos(th) / den).real
    c_dm2 = (zeta * 1j * np.sin(th) * np.cos(g) / den).real
    dim = 2**L
    Q = np.zeros((dim, dim), dtype=complex)
    for j in range(L):
        j1, j2 = (j + 1) % L, (j + 2) % L
        Q += c_xy * (_site_op({j: _SX, j1: _SX}, L) + _site_op({j: _SY, j1: _SY}, L))
        Q += c_zz * (_site_op({j: _SZ, j1: _SZ}, L) - np.eye(dim))
        # three-site terms on one sublattice only (odd starts for +, even for -)
        if (j % 2 == 0) == (branch > 0):
            continue
        Q += c_hop * (
            _site_op({j: _SX, j2: _SX}, L)
            + _site_op({j: _SY, j2: _SY}, L)
            + _site_op({j: _SZ, j2: _SZ}, L)
        )
        Q += c_dm1 * (
            _site_op({j: _SX, j1: _SZ, j2: _SY}, L) - _site_op({j: _SY, j1: _SZ, j2: _SX}, L)
        )
        Q += c_dm2 * (
            _site_op({j: _SZ, j1: _SX, j2: _SY}, L) - _site_op({j: _SZ, j1: _SY, j2: _SX}, L)
        )
        Q += c_dm2 * (
            _site_op({j: _SX, j1: _SY, j2: _SZ}, L) - _site_op({j: _SY, j1: _SX, j2: _SZ}, L)
        )
    return Q


def translation_operator(L: int, shift: int = 1) -> np.ndarray:
    """Dense operator of the cyclic site shift j -> j + shift."""
    dim = 2**L
    T = np.zeros((dim, dim))
    for c in range(dim):
        e = np.zeros(dim)
        e[c] = 1.0
        T[:, c] = _roll_qubits(e, L, shift)
    return T


# ---------------------------------------------------------------------------
# transfer matrices


def _r_matrix(u: complex, g: complex) -> np.ndarray:
    """4x4 R on (aux, site): diag sin(u+g)/sin g, exchange 1, stay sin u/sin g."""
    sg = np.sin(g)
    b = np.sin(u) / sg
    a = np.sin(u + g) / sg
    return np.array(
        [[a, 0, 0, 0], [0, b, 1, 0], [0, 1, b, 0], [0, 0, 0, a]], dtype=complex
    )


def transfer_shift(params) -> complex:
    """The inhomogeneity shift theta of the commuting transfer-matrix family.

    The two-site gate V satisfies P R(theta) = c V (P the qubit swap) for
    exactly one of the two solutions of sin(theta) = -sin(x): theta = -x
    when cos(Delta tau / 2) > 0 and theta = x + pi otherwise.  (The two
    candidates give R matrices differing in the relative sign of the
    exchange element, so only one reproduces the gate.)  All transfer-matrix
    identities -- the factorization of the Floquet operator and the
    double-row identity at beta = 0 -- hold with this shift.
    """
    p = _coerce(params)
    if math.cos(p.delta * p.tau / 2.0) > 0:
        return -p.x
    return p.x + math.pi


def build_transfer_matrix(u: complex, params, L: int) -> np.ndarray:
    """Row-to-row T(u) with staggered inhomogeneities +-theta/2.

    Site 1 carries +theta/2, site 2 carries -theta/2, and so on, with
    theta = transfer_shift(params).  Matrices at different u (fixed params)
    form a commuting family, and the Floquet operator factorizes as
    U = c T(theta/2) T(-gamma - theta/2) with |c (sin(gamma+x) sin(gamma-x)
    / sin^2 gamma)^{L/2}| = 1; see floquet_transfer_product.
    """
    _check_L(L, 10, "build_transfer_matrix")
    p = _coerce(params)
    g = p.gamma
    th = transfer_shift(p)
    # W[a_out, a_in] = 2x2 site operator; accumulate the matrix product over
    # sites L, L-1, ..., 1 acting on a growing tensor product.
    blocks = None
    for site in range(L, 0, -1):
        inhom = th / 2 if site % 2 else -th / 2
        R = _r_matrix(u + inhom, g).reshape(2, 2, 2, 2)  # [a_out, s_out, a_in, s_in]
        W = [[R[ao, :, ai, :] for ai in range(2)] for ao in range(2)]
        if blocks is None:
            blocks = W
        else:
            # aux product keeps R_L leftmost; the new site's factor sits to the
            # left of the already-accumulated sites in the tensor product
            blocks = [
                [
                    sum(np.kron(W[k][ai], blocks[ao][k]) for k in range(2))
                    for ai in range(2)
                ]
                for ao in range(2)
            ]
    return blocks[0][0] + blocks[1][1]


def _transfer_prefactor(params, L: int) -> complex:
    p = _coerce(params)
    g, x = p.gamma, p.x
    return (np.sin(g) ** 2 / (np.sin(g + x) * np.sin(g - x))) ** (L // 2)


def double_row_transfer(beta: complex, params, L: int) -> np.ndarray:
    """Normalized two-row transfer matrix; equals the identity at beta = 0.

    With theta = transfer_shift(params), the product pref T(theta/2 + beta)
    T(-gamma + theta/2 - beta) telescopes to the identity at beta = 0 (the
    shifted points make each row a product of gates that cancel pairwise).
    All members commute with each other and with U.
    """
    p = _coerce(params)
    g = p.gamma
    th = transfer_shift(p)
    pref = _transfer_prefactor(p, L)
    return pref * build_transfer_matrix(th / 2 + beta, p, L) @ build_transfer_matrix(
        -g + th / 2 - beta, p, L
    )


def floquet_transfer_product(params, L: int) -> np.ndarray:
    """pref T(theta/2) T(-gamma - theta/2): equals U up to a unit-modulus scalar."""
    p = _coerce(params)
    g = p.gamma
    th = transfer_shift(p)
    pref = _transfer_prefactor(p, L)
    return pref * build_transfer_matrix(th / 2, p, L) @ build_transfer_matrix(
        -g - th / 2, p, L
    )


# ---------------------------------------------------------------------------
# symmetry sectors and the diagonal ensemble


def _basis_indices_m(L: int, M: int) -> np.ndarray:
    """Computational-basis indices with M down spins (bit 1 = down)."""
    out = []
    for pos in combinations(range(L), M):
        idx = 0
        for j in pos:
            idx |= 1 << (L - 1 - j)
        out.append(idx)
    return np.array(sorted(out), dtype=np.int64)


def _shift_index(idx: int, L: int, shift: int) -> int:
    """Index of the basis state with all spins moved by ``shift`` sites."""
    bits = [(idx >> (L - 1 - j)) & 1 for j in range(L)]
    bits = [bits[(j - shift) % L] for j in range(L)]
    out = 0
    for b in bits:
        out = 2 * out + b
    return out


def _momentum_zero_basis(L: int, M: int) -> np.ndarray:
    """Orthonormal basis (2^L x d) of the M-magnon, T^2-eigenvalue-1 sector."""
    idxs = _basis_indices_m(L, M)
    seen = set()
    cols = []
    for i in idxs:
        if i in seen:
            continue
        orbit = []
        j = int(i)
        while j not in orbit:
            orbit.append(j)
            j = _shift_index(j, L, 2)
        seen.update(orbit)
        v = np.zeros(2**L, dtype=complex)
        for j in orbit:
            v[j] += 1.0
        cols.append(v / np.linalg.norm(v))
    return np.array(cols).T


def diagonal_ensemble_sz(params, L: int, site: int = 1, degeneracy_tol: float = 1e-10) -> float:
    """Infinite-time average of <sigma^z_site> from the Neel state.

    Works in the (M = L/2, two-site-momentum 0) sector that carries the full
    weight of the Neel state.  Degenerate Floquet eigenphases are handled
    exactly by projecting onto each degenerate block:
    sum_b <Psi0| P_b sigma^z P_b |Psi0>.
    """
    _check_L(L, MAX_L_DIAG, "diagonal_ensemble_sz")
    B = _momentum_zero_basis(L, L // 2)
    d = B.shape[1]
    UB = np.empty_like(B)
    for c in range(d):
        UB[:, c] = apply_floquet(B[:, c].copy(), params, L)
    U_sym = B.conj().T @ UB
    # Schur of a normal matrix = unitary eigendecomposition, stable under
    # degeneracies (plain eig returns non-orthogonal columns there)
    from scipy.linalg import schur

    Tm, V = schur(U_sym, output="complex")
    w = np.diag(Tm).copy()
    offdiag = np.max(np.abs(Tm - np.diag(w)))
    if offdiag > 1e-9:
        raise DegeneracyUnresolved(f"sector Floquet matrix not normal: {offdiag:.2e}")
    psi0 = neel_state(L)
    c0 = V.conj().T @ (B.conj().T @ psi0)
    if abs(np.sum(np.abs(c0) ** 2) - 1.0) > 1e-10:
        raise DegeneracyUnresolved("Neel weight not contained in the symmetry sector")
    idx = np.arange(2**L)
    bits = (idx >> (L - site)) & 1  # site is 1-indexed
    S_sym = B.conj().T @ ((1 - 2 * bits)[:, None] * B)
    S_eig = V.conj().T @ S_sym @ V
    # group equal eigenphases
    order = np.argsort(np.angle(w))
    total = 0.0
    k = 0
    while k < d:
        block = [order[k]]
        while (
            k + 1 < d
            and abs(w[order[k + 1]] - w[order[k]]) < degeneracy_tol
        ):
            k += 1
            block.append(order[k])
        b = np.array(block)
        cb = c0[b]
        total += float(np.real(cb.conj() @ S_eig[np.ix_(b, b)] @ cb))
        k += 1
    return total


# ---------------------------------------------------------------------------
# one-magnon sector


_LAM_INF = 20.0  # imaginary-part clamp standing in for a Bethe root at infinity


def _magnon_bae_lhs(lam, theta, g: complex):
    """A(lambda) = [cos theta - cos(2 lambda + 2 gamma)] / [cos theta - cos 2 lambda].

    The product of sin(lambda - xi_j + gamma)/sin(lambda - xi_j) over the two
    staggered inhomogeneities xi = +-theta/2, collapsed by product-to-sum.
    """
    lam = np.asarray(lam, dtype=complex)
    return (np.cos(theta) - np.cos(2 * lam + 2 * g)) / (np.cos(theta) - np.cos(2 * lam))


def bethe_residual(roots, params, L: int) -> np.ndarray:
    """|A(lam_j)^{L/2} Prod_{k != j} sin(lam_j - lam_k - g)/sin(lam_j - lam_k + g) - 1|."""
    p = _coerce(params)
    roots = np.asarray(roots, dtype=complex)
    g = p.gamma
    th = transfer_shift(p)
    out = np.empty(len(roots))
    for j, lj in enumerate(roots):
        lhs = _magnon_bae_lhs(lj, th, g) ** (L // 2)
        rhs = 1.0 + 0j
        for k, lk in enumerate(roots):
            if k != j:
                rhs *= np.sin(lj - lk - g) / np.sin(lj - lk + g)
        out[j] = abs(lhs / rhs - 1.0)
    return out


def magnon_roots(params, L: int) -> np.ndarray:
    """The L one-magnon Bethe roots of the staggered transfer matrix.

    A(lambda)^{L/2} = 1 splits over the targets t_m = exp(4 pi i m / L),
    m = 0 .. L/2 - 1, and A(lambda) = t is a quadratic in w = exp(2 i lambda):

        (t - e^{2ig}) w^2 + 2 cos(theta) (1 - t) w + (t - e^{-2ig}) = 0,

    solved in closed form (stable companion-root formula).  A vanishing
    leading (trailing) coefficient signals a root at lambda = -i inf
    (+i inf); such roots are clamped to imaginary part -+ _LAM_INF, which is
    exact to machine precision for every derived quantity.  Roots are
    reported with Re lambda in (-pi/2, pi/2] (the Brillouin zone of the
    pi-periodic equation).
    """
    _check_L(L, MAX_L_MAGNON, "magnon_roots")
    if L % 2:
        raise ValueError("L must be even")
    p = _coerce(params)
    g = p.gamma
    th = transfer_shift(p)
    roots: list[complex] = []
    for m in range(L // 2):
        t = np.exp(4j * np.pi * m / L)
        ca = t - np.exp(2j * g)
        cb = 2 * np.cos(th) * (1.0 - t)
        cc = t - np.exp(-2j * g)
        scale = max(abs(cb), abs(cc), 1.0)
        ws: list[complex] = []
        if abs(ca) < 1e-10 * scale:
            roots.append(complex(0.0, -_LAM_INF))
            ws.append(-cc / cb)
        elif abs(cc) < 1e-10 * max(abs(ca), abs(cb), 1.0):
            roots.append(complex(0.0, _LAM_INF))
            ws.append(-cb / ca)
        else:
            disc = np.sqrt(cb * cb - 4 * ca * cc)
            q = -0.5 * (cb + disc) if abs(cb + disc) > abs(cb - disc) else -0.5 * (cb - disc)
            ws += [q / ca, cc / q]
        for w in ws:
            lam = complex(np.log(w) / 2j)
            if abs(lam.imag) > _LAM_INF:
                lam = complex(lam.real, math.copysign(_LAM_INF, lam.imag))
            roots.append(lam)
    return np.array(roots)


def magnon_vector(lam: complex, params, L: int) -> np.ndarray:
    """Normalized one-magnon Bethe vector of root ``lam`` in the full 2^L space.

    The algebraic-Bethe-ansatz state B(lam)|up...up> of the staggered-
    inhomogeneity monodromy matrix; by the crossing symmetry of the R matrix
    its coordinate wave function is the closed product form evaluated at
    mu = -lam - gamma,

        psi(site s) = Prod_{j < s} sin(mu - xi_j + g) Prod_{j > s} sin(mu - xi_j),

    with xi_j = +theta/2 on odd 1-indexed sites and -theta/2 on even ones.
    Amplitudes are built by ratio recursion with running renormalization, so
    clamped near-infinite roots cannot overflow.
    """
    _check_L(L, MAX_L_MAGNON, "magnon_vector")
    p = _coerce(params)
    g = p.gamma
    th = transfer_shift(p)
    mu = -lam - g
    xi = np.array([th / 2 if s % 2 else -th / 2 for s in range(1, L + 1)])
    amps = np.empty(L, dtype=complex)
    amps[0] = 1.0
    for s in range(1, L):  # psi(s+1)/psi(s) = sin(mu - xi_s + g)/sin(mu - xi_{s+1})
        amps[s] = amps[s - 1] * np.sin(mu - xi[s - 1] + g) / np.sin(mu - xi[s])
        big = abs(amps[s])
        if big > 1e100:
            amps[: s + 1] /= big
    psi = np.zeros(2**L, dtype=complex)
    for s in range(1, L + 1):  # down spin at 1-indexed site s (site 1 = MSB)
        psi[1 << (L - s)] = amps[s - 1]
    return psi / np.linalg.norm(psi)


def magnon_rapidity(lam: complex, params) -> tuple[complex, int]:
    """Map a Bethe root to the (rapidity, site parity) of the Gaudin formula.

    On the theta = -x branch the rapidity is z = i(lam + gamma/2) with site
    parity 0; on the theta = x + pi branch the extra pi in the
    inhomogeneities shifts z by i pi/2 and swaps the sublattice labels.
    """
    p = _coerce(params)
    g = p.gamma
    if math.cos(p.delta * p.tau / 2.0) > 0:
        return 1j * (lam + g / 2), 0
    return 1j * (lam + g / 2) + 1j * math.pi / 2, 1


@dataclass
class MagnonMode:
    root: complex  # Bethe root lambda
    rapidity: complex  # Gaudin-convention rapidity
    site_parity: int  # sublattice label of site 1 in the Gaudin convention
    eigenphase: float
    vector: np.ndarray  # 2^L eigenvector of U
    residual: float  # ||U psi - e^{i phi} psi||


def one_magnon_sector(params, L: int, tol: float = 1e-8) -> list[MagnonMode]:
    """All L one-magnon eigenstates of the Floquet operator, from the Bethe roots.

    Each root's algebraic-Bethe vector is verified to be an eigenvector of U
    (residual below ``tol``); the eigenphase is read off from the Rayleigh
    quotient.  No eigen-decomposition pairing is involved, so degenerate
    +-lambda doublets are resolved exactly.
    """
    _check_L(L, MAX_L_MAGNON, "one_magnon_sector")
    p = _coerce(params)
    modes = []
    for lam in magnon_roots(p, L):
        psi = magnon_vector(lam, p, L)
        upsi = apply_floquet(psi.copy(), p, L)
        phase = complex(np.vdot(psi, upsi))
        res = float(np.linalg.norm(upsi - phase * psi))
        if res > tol:
            raise RootMatchFailed(
                f"Bethe vector of root {lam:.6f} is not an eigenvector: "
                f"residual {res:.3e}"
            )
        q, parity = magnon_rapidity(lam, p)
        modes.append(
            MagnonMode(
                root=complex(lam),
                rapidity=q,
                site_parity=parity,
                eigenphase=float(np.angle(phase)),
                vector=psi,
                residual=res,
            )
        )
    return modes
