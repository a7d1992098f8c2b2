"""Boundary quantum-transfer-matrix eigenvalue, T-system, and Y-systems.

A small regulator beta deforms the initial state so that the leading QTM
eigenvalue Lambda_beta(u) is given by a two-term TQ formula with explicit
boundary factors.  Fused eigenvalues t_j(u) follow either from a three-term
recursion or from an explicit product-sum formula; ratios of t_j build the
Y-functions whose beta -> 0 limit reproduces the eta_n of the stationary
state.  All shift superscripts f^[k] are real argument shifts u + k*gamma/2.

In the gapped regime this is an independent oracle for the closed-form
eta recursion; at gapless root-of-unity points the truncated Y-system is the
*only* route to the eta_j entering the density equations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LimitNotConverged, PoleProximity, UnsupportedRoot
from .params import DerivedParams, Regime, RootOfUnityPoint

_POLE_TOL = 1e-14


@dataclass(frozen=True)
class QtmData:
    """Boundary/inhomogeneity data of the regulated quantum transfer matrix."""

    gamma: complex
    x: complex
    beta: complex

    @property
    def xi1(self) -> complex:
        return self.beta + self.x / 2 + self.gamma

    @property
    def xi2(self) -> complex:
        return self.beta + self.x / 2

    @property
    def xi_plus(self) -> complex:
        return self.x / 2 + self.gamma / 2

    @property
    def xi_minus(self) -> complex:
        return self.x / 2 - self.gamma / 2

    def Q(self, u):
        b = self.beta + self.x / 2
        return np.sin(u - b) * np.sin(u + b)

    def phi(self, u):
        g = self.gamma
        out = 1.0
        for xk in (self.xi1, self.xi2):
            out = out * np.sin(u - g / 2 + xk) * np.sin(u + g / 2 - xk)
        return out

    def omega1(self, u):
        g = self.gamma
        return (
            np.sin(2 * u + g)
            * np.sin(u + self.xi_plus - g / 2)
            * np.sin(u + self.xi_minus - g / 2)
            / np.sin(2 * u)
        )

    def omega2(self, u):
        g = self.gamma
        return (
            np.sin(2 * u - g)
            * np.sin(u - self.xi_plus + g / 2)
            * np.sin(u - self.xi_minus + g / 2)
            / np.sin(2 * u)
        )


def qtm_from_params(params: DerivedParams, beta: complex) -> QtmData:
    return QtmData(gamma=params.gamma, x=params.x, beta=complex(beta))


def lambda_beta(u, qtm: QtmData):
    """Leading QTM eigenvalue: TQ form with the two omega dressing factors."""
    u = np.asarray(u, dtype=complex)
    g = qtm.gamma
    Qu = qtm.Q(u)
    if np.any(np.abs(Qu) < _POLE_TOL) or np.any(np.abs(np.sin(2 * u)) < _POLE_TOL):
        raise PoleProximity("lambda_beta evaluated at a zero of Q or sin(2u)")
    return (
        qtm.omega1(u) * qtm.phi(u + g / 2) * qtm.Q(u - g) / Qu
        + qtm.omega2(u) * qtm.phi(u - g / 2) * qtm.Q(u + g) / Qu
    )


def f_function(u, qtm: QtmData):
    """The inhomogeneous term of the fusion recursion, f(u - gamma/2) = phi phi om om."""
    g = qtm.gamma
    v = np.asarray(u, dtype=complex) + g / 2
    return qtm.phi(v + g) * qtm.phi(v - g) * qtm.omega1(v + g / 2) * qtm.omega2(v - g / 2)


def afrak_beta(u, qtm: QtmData):
    """Regulated auxiliary function; beta -> 0 recovers the closed-form afrak."""
    u = np.asarray(u, dtype=complex)
    g = qtm.gamma
    return (
        qtm.omega1(u)
        / qtm.omega2(u)
        * qtm.phi(u + g / 2)
        / qtm.phi(u - g / 2)
        * qtm.Q(u - g)
        / qtm.Q(u + g)
    )


class TFunctions:
    """Fused eigenvalues t_j and the Psi_j products, as argument-shift closures.

    The primary evaluator is the explicit sum over k = 1..j+1; the three-term
    recursion is retained as an independent oracle (exponential in j, test
    sizes only).
    """

    def __init__(self, qtm: QtmData):
        self.qtm = qtm
        self.s = qtm.gamma / 2  # the unit of the [k] shift superscript

    def t(self, j: int, u):
        """Explicit closed form; t_0 = phi."""
        if j < 0:
            raise ValueError("j >= 0 required")
        q = self.qtm
        s = self.s
        u = np.asarray(u, dtype=complex)
        if j == 0:
            return q.phi(u)
        tot = 0.0
        Qout = q.Q(u + (j + 1) * s) * q.Q(u - (j + 1) * s)
        for k in range(1, j + 2):
            term = q.phi(u + (2 * k - j - 2) * s)
            for l in range(1, k):
                term = term * q.omega1(u + (2 * l - j - 1) * s)
            for l in range(k, j + 1):
                term = term * q.omega2(u + (2 * l - j - 1) * s)
            den = q.Q(u + (2 * k - j - 3) * s) * q.Q(u + (2 * k - j - 1) * s)
            tot = tot + term * Qout / den
        return tot

    def t_recursive(self, j: int, u):
        """Three-term fusion recursion seeded by t_0 = phi, t_1 = Lambda_beta."""
        q = self.qtm
        g = q.gamma
        u = np.asarray(u, dtype=complex)
        if j == 0:
            return q.phi(u)
        if j == 1:
            return lambda_beta(u, q)
        # unrescaled T_j, then divide out the phi products
        def T(n, v):
            if n == 0:
                return np.ones_like(v)
            if n == 1:
                return lambda_beta(v, q)
            return T(n - 1, v - g / 2) * lambda_beta(v + (n - 1) * g / 2, q) - f_function(
                v + (n - 3) * g / 2, q
            ) * T(n - 2, v - g)

        val = T(j, u)
        for l in range(1, j):
            val = val / q.phi(u + (2 * l - j) * self.s)
        return val

    def psi(self, j: int, u):
        """Psi_j = prod_{l=1}^{j} omega1^[2l-j] omega2^[2l-j-2]."""
        q = self.qtm
        s = self.s
        u = np.asarray(u, dtype=complex)
        out = np.ones_like(u)
        for l in range(1, j + 1):
            out = out * q.omega1(u + (2 * l - j) * s) * q.omega2(u + (2 * l - j - 2) * s)
        return out


def y_gapped(j: int, u, tf: TFunctions):
    """Y_j = t_{j-1} t_{j+1} / (Psi_j phi^[j+1] phi^[-j-1]); Y_0 = 0."""
    if j == 0:
        return np.zeros_like(np.asarray(u, dtype=complex))
    q = tf.qtm
    s = tf.s
    u = np.asarray(u, dtype=complex)
    return (
        tf.t(j - 1, u)
        * tf.t(j + 1, u)
        / (tf.psi(j, u) * q.phi(u + (j + 1) * s) * q.phi(u - (j + 1) * s))
    )


def y1_exact(u, tf: TFunctions):
    """1 + Y_1 from the TQ form: Lambda(u+g/2) Lambda(u-g/2) / f(u-g/2), minus 1."""
    q = tf.qtm
    g = q.gamma
    u = np.asarray(u, dtype=complex)
    return lambda_beta(u + g / 2, q) * lambda_beta(u - g / 2, q) / f_function(u - g / 2, q) - 1.0


# ---------------------------------------------------------------------------
# residual checks


def t_recursion_residual(tf: TFunctions, j: int, u) -> float:
    """Max relative deviation between explicit t_j and the fusion recursion."""
    a = tf.t(j, u)
    b = tf.t_recursive(j, u)
    return float(np.max(np.abs(a - b) / np.abs(a)))


def t_system_residual(tf: TFunctions, j: int, m: int, u) -> float:
    """t_j^[m] t_j^[-m] = t_{j+m} t_{j-m} + Psi_{j-m+1} t_{m-1}^[j+1] t_{m-1}^[-j-1]."""
    s = tf.s
    u = np.asarray(u, dtype=complex)
    lhs = tf.t(j, u + m * s) * tf.t(j, u - m * s)
    rhs = tf.t(j + m, u) * tf.t(j - m, u) + tf.psi(j - m + 1, u) * tf.t(
        m - 1, u + (j + 1) * s
    ) * tf.t(m - 1, u - (j + 1) * s)
    return float(np.max(np.abs(lhs - rhs) / np.abs(lhs)))


def y_system_residual(tf: TFunctions, j: int, u) -> float:
    """Y_j(u+g/2) Y_j(u-g/2) = (1 + Y_{j+1})(1 + Y_{j-1})."""
    g = tf.qtm.gamma
    u = np.asarray(u, dtype=complex)
    lhs = y_gapped(j, u + g / 2, tf) * y_gapped(j, u - g / 2, tf)
    rhs = (1.0 + y_gapped(j + 1, u, tf)) * (1.0 + y_gapped(j - 1, u, tf))
    return float(np.max(np.abs(lhs - rhs) / np.abs(lhs)))


def y1_consistency_residual(tf: TFunctions, u) -> float:
    """Two independent Y_1 formulas agree."""
    a = y_gapped(1, u, tf)
    b = y1_exact(u, tf)
    return float(np.max(np.abs(a - b) / np.abs(1.0 + a)))


# ---------------------------------------------------------------------------
# beta -> 0 limits


_DEFAULT_BETAS = (1e-5, 1e-6, 1e-7)


def beta_limit(evaluate, betas=_DEFAULT_BETAS, tol: float = 1e-7):
    """Richardson-extrapolated beta -> 0 limit of evaluate(beta).

    The functions are analytic in beta off isolated points, so value(beta) =
    limit + c*beta + O(beta^2) and one Richardson step on a geometric beta
    sequence cancels the linear term.  Successive extrapolants must agree to
    ``tol`` (relative to scale 1 + |value|).
    """
    betas = tuple(betas)
    if len(betas) < 3:
        raise ValueError("need at least three beta values")
    vals = [np.asarray(evaluate(b), dtype=complex) for b in betas]
    extr = []
    for k in range(len(betas) - 1):
        r = betas[k] / betas[k + 1]
        extr.append((r * vals[k + 1] - vals[k]) / (r - 1.0))
    diff = np.max(np.abs(extr[-1] - extr[-2]) / (1.0 + np.abs(extr[-1])))
    if diff > tol:
        raise LimitNotConverged(f"beta -> 0 extrapolants differ by {diff:.3e}")
    return extr[-1]


def eta_gapped_from_qtm(
    n: int, lam, params: DerivedParams, betas=_DEFAULT_BETAS, tol: float = 1e-7
):
    """eta_n(lambda) as the beta -> 0 limit of Y_n at real argument.

    With gamma = i eta the Y-functions evaluated directly at real u = lambda
    converge to the closed-form eta_n(lambda) (checked digit-for-digit against
    the eta recursion); no rotation of the argument is involved here.
    """
    lam = np.asarray(lam, dtype=complex)

    def evaluate(beta):
        tf = TFunctions(qtm_from_params(params, beta))
        return y_gapped(n, lam, tf)

    return beta_limit(evaluate, betas=betas, tol=tol)


# ---------------------------------------------------------------------------
# gapless root-of-unity truncation


class YFamilyGapless:
    """Y_j, K, and bfrak at a root-of-unity point, for one value of beta.

    The second-branch Y_j (nu1 <= j <= nu1+nu2-1) carry integer shifts
    w_j * p0 (p0 * gamma/2 = pi/2 exactly) that are fixed by requiring the
    truncated Y-system to close numerically: w_j = 1 for even j - nu1 and 0
    otherwise (each w_j only matters mod 2).
    """

    NU2_MAX = 2

    def __init__(self, root: RootOfUnityPoint, params: DerivedParams, beta: complex):
        if params.regime not in (Regime.GAPLESS, Regime.FREE_POINT):
            raise ValueError("gapless parameters required")
        if root.nu2 > self.NU2_MAX:
            raise UnsupportedRoot(f"nu2 = {root.nu2} > {self.NU2_MAX}")
        if abs(params.gamma - root.gamma) > 1e-9:
            raise ValueError("params.gamma does not match the root-of-unity point")
        self.root = root
        self.params = params
        self.qtm = qtm_from_params(params, beta)
        self.tf = TFunctions(self.qtm)
        self.nu1, self.nu2 = root.nu1, root.nu2
        self.p0 = root.nu1 + 1.0 / root.nu2
        self.p1 = 1.0
        self.p2 = 1.0 / root.nu2
        self.w_j = {j: 1 - (j - root.nu1) % 2 for j in range(root.nu1, root.Nb)}

    def _sh(self, k: float):
        return k * self.tf.s

    def Omega(self, u):
        c = 1 + self.nu1 * self.nu2
        g = self.qtm.gamma
        u = np.asarray(u, dtype=complex)
        return (
            np.sin(c * (u + g / 2))
            * np.sin(c * (u + g / 2 + np.pi / 2))
            / (np.sin(c * u) * np.sin(c * (u + np.pi / 2)))
        )

    def Omega12(self, u, sign: int):
        c = 1 + self.nu1 * self.nu2
        u = np.asarray(u, dtype=complex)
        return 2.0 ** (-self.nu1 * self.nu2) * np.sin(c * (u + sign * self.qtm.x / 2))

    def bfrak(self, u):
        c = 1 + self.nu1 * self.nu2
        x = self.qtm.x
        u = np.asarray(u, dtype=complex)
        ph = self.nu1 * self.nu2 * np.pi / 2
        return (-1.0) ** self.nu2 * np.sin(c * (u + x / 2) + ph) / np.sin(c * (u - x / 2) + ph)

    def K(self, u):
        tf, nu1, nu2 = self.tf, self.nu1, self.nu2
        u = np.asarray(u, dtype=complex)
        d = self._sh((nu2 - 2) * self.p0)
        c = 1 + nu1 * nu2
        num = tf.t(nu1 * (nu2 - 1), u + d) * tf.psi(nu1, u - self._sh(c) + d)
        den = (
            tf.t(nu1 - 1, u + self._sh(c) + d)
            * self.Omega(u + self._sh(1) + d)
            * self.Omega12(u + self._sh(1) + d, +1)
            * self.Omega12(u + self._sh(1) + d, -1)
        )
        return num / den

    def Y(self, j: int, u):
        tf, nu1 = self.tf, self.nu1
        u = np.asarray(u, dtype=complex)
        if j == 0:
            return np.zeros_like(u)
        if 1 <= j <= nu1 - 1:
            return (
                tf.t(j + 1, u)
                * tf.t(j - 1, u)
                / (tf.psi(j, u) * tf.t(0, u + self._sh(j + 1)) * tf.t(0, u - self._sh(j + 1)))
            )
        if nu1 <= j <= self.root.Nb - 1:
            w = self._sh(self.w_j[j] * self.p0)
            a = nu1 * (j + 2 - nu1)
            b = nu1 * (j - nu1)
            num = tf.t(a, u + w) * tf.t(b, u + w)
            den = (
                tf.psi(b + 1, u + w)
                * tf.t(nu1 - 1, u + self._sh(nu1 * (j + 1 - nu1) + 1) + w)
                * tf.t(nu1 - 1, u - self._sh(nu1 * (j + 1 - nu1) + 1) + w)
            )
            return num / den
        raise ValueError(f"j = {j} outside 0..{self.root.Nb - 1}")

    # -- residuals of the truncated Y-system ---------------------------------

    def first_branch_residual(self, j: int, u) -> float:
        """Y_j^[p1] Y_j^[-p1] = (1+Y_{j+1}) (1+Y_{j-1})^(1-2 delta_{j,0}); j <= nu1-2."""
        s1 = self._sh(self.p1)
        u = np.asarray(u, dtype=complex)
        lhs = self.Y(j, u + s1) * self.Y(j, u - s1)
        rhs = (1.0 + self.Y(j + 1, u)) * (1.0 + self.Y(j - 1, u)) ** (1 - 2 * (j == 0))
        return float(np.max(np.abs(lhs - rhs) / np.abs(lhs)))

    def junction_residual(self, u) -> float:
        """The four-shift relation tying Y_{nu1-1} to both branches."""
        nu1 = self.nu1
        s1, s2 = self._sh(self.p1), self._sh(self.p2)
        u = np.asarray(u, dtype=complex)
        lhs = (
            self.Y(nu1 - 1, u + s1 + s2)
            * self.Y(nu1 - 1, u - s1 - s2)
            * self.Y(nu1 - 1, u + s1 - s2)
            * self.Y(nu1 - 1, u - s1 + s2)
        )
        rhs = (
            ((1.0 + self.Y(nu1 - 2, u + s2)) * (1.0 + self.Y(nu1 - 2, u - s2)))
            ** (1 - 2 * (nu1 == 1))
            * (1.0 + self.Y(nu1, u + s1))
            * (1.0 + self.Y(nu1, u - s1))
            * (1.0 + self.Y(nu1 - 1, u + s1 - s2))
            * (1.0 + self.Y(nu1 - 1, u - s1 + s2))
        )
        return float(np.max(np.abs(lhs - rhs) / np.abs(lhs)))

    def second_branch_residual(self, j: int, u) -> float:
        """Y_j^[p2] Y_j^[-p2] = (1+Y_{j+1})(1+Y_{j-1})^(1-2 delta_{j,nu1}); nu1 <= j <= Nb-2."""
        s2 = self._sh(self.p2)
        u = np.asarray(u, dtype=complex)
        lhs = self.Y(j, u + s2) * self.Y(j, u - s2)
        rhs = (1.0 + self.Y(j + 1, u)) * (1.0 + self.Y(j - 1, u)) ** (1 - 2 * (j == self.nu1))
        return float(np.max(np.abs(lhs - rhs) / np.abs(lhs)))

    def closure_residual(self, u) -> float:
        """1 + Y_{Nb-1} = 1 + (b + 1/b) K + K^2."""
        u = np.asarray(u, dtype=complex)
        lhs = 1.0 + self.Y(self.root.Nb - 1, u)
        b = self.bfrak(u)
        K = self.K(u)
        rhs = 1.0 + (b + 1.0 / b) * K + K * K
        return float(np.max(np.abs(lhs - rhs) / np.abs(lhs)))

    def k_residual(self, u) -> float:
        """K^[p2] K^[-p2] = 1 + Y_{Nb-2}.

        For nu2 = 1 the internal -p0 shift of K inverts it relative to this
        relation, so the left-hand side is 1/(K^[p2] K^[-p2]) there; both
        variants were discriminated numerically (residual ~1e-11 vs O(1)).
        """
        s2 = self._sh(self.p2)
        u = np.asarray(u, dtype=complex)
        lhs = self.K(u + s2) * self.K(u - s2)
        if self.nu2 == 1:
            lhs = 1.0 / lhs
        rhs = 1.0 + self.Y(self.root.Nb - 2, u)
        return float(np.max(np.abs(lhs - rhs) / np.abs(lhs)))


def build_y_gapless(
    root: RootOfUnityPoint, params: DerivedParams, beta: complex
) -> YFamilyGapless:
    return YFamilyGapless(root, params, beta)


def eta_gapless(
    root: RootOfUnityPoint,
    params: DerivedParams,
    lam,
    betas=_DEFAULT_BETAS,
    tol: float = 1e-7,
    nudge: float = 1e-9,
    swap_last: bool = False,
) -> np.ndarray:
    """The Nb eta_j(lambda) of the gapless point, shape (Nb, len(lam)).

    Rows follow the string enumeration of :func:`kernels.build_string_table`:
    string p = 1..Nb-2 carries eta_p = lim Y_p(i lambda) (first branch for
    p < nu1, second branch from p = nu1 on), string Nb-1 carries lim b*K and
    string Nb carries lim b/K.  ``swap_last`` exchanges the b*K / b/K pair
    (the K-orientation ambiguity; observables against exact diagonalization
    discriminate).  Real parts only; imaginary residues are asserted < 1e-6
    relative (the off-axis nudge leaves O(|eta|^2 * nudge) imaginary parts
    near the poles of eta_j).
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    u = 1j * lam + nudge  # keep off the isolated poles on the imaginary axis

    def evaluate(beta):
        fam = build_y_gapless(root, params, beta)
        rows = [fam.Y(j, u) for j in range(1, root.Nb - 1)]
        b = fam.bfrak(u)
        K = fam.K(u)
        pair = [b * K, b / K]
        if swap_last:
            pair.reverse()
        rows.extend(pair)
        return np.stack(rows)

    vals = beta_limit(evaluate, betas=betas, tol=tol)
    if np.max(np.abs(vals.imag) / (1.0 + np.abs(vals.real))) > 1e-6:
        raise LimitNotConverged("gapless eta_j not real on the real axis")
    return vals.real
