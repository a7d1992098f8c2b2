"""Map from bare model parameters (Delta, tau) to integrability data (gamma, x).

The brickwork circuit built from two-site XXZ gates of duration tau is
integrable for every tau.  Its conserved structure is controlled by two
derived parameters,

    cos(gamma) = sin(Delta tau/2) / sin(tau/2),
    sinh(x/i)  = sin(gamma) tan(tau/2),

which are purely imaginary / real ("gapped") for small tau and real /
purely imaginary ("gapless") beyond the threshold tau_th = 2 pi/(Delta+1).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import DegenerateParams, NoBracket


class Regime(enum.Enum):
    GAPPED = "gapped"
    GAPLESS = "gapless"
    FREE_POINT = "free_point"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ModelParams:
    """Bare parameters: anisotropy, Trotter step, and optional chain length."""

    delta: float
    tau: float
    L: int | None = None

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        if self.L is not None and (self.L % 2 != 0 or self.L < 4):
            raise ValueError("L must be even and >= 4")


@dataclass(frozen=True)
class DerivedParams:
    """The (gamma, x) bundle plus regime classification and the transition point.

    ``shift`` is the real rapidity shift entering the TBA driving terms:
    x itself in the gapped regime, Im(x) in the gapless one.
    """

    gamma: complex
    eta: float  # nan unless gamma = i*eta (gapped)
    x: complex
    shift: float
    regime: Regime
    tau_th: float
    delta: float
    tau: float


@dataclass(frozen=True)
class RootOfUnityPoint:
    """Gapless point gamma = pi/(nu1 + 1/nu2) with a finite string content."""

    nu1: int
    nu2: int

    def __post_init__(self):
        if self.nu1 < 1 or self.nu2 < 1:
            raise ValueError("nu1, nu2 must be >= 1")

    @property
    def gamma(self) -> float:
        return math.pi / (self.nu1 + 1.0 / self.nu2)

    @property
    def Nb(self) -> int:
        return self.nu1 + self.nu2


def threshold_tau(delta: float) -> float:
    """Trotter step at which the gapped/gapless transition occurs: 2 pi/(Delta+1)."""
    if delta <= -1:
        raise ValueError("delta must exceed -1")
    return 2.0 * math.pi / (delta + 1.0)


_DEGENERATE_TOL = 1e-13


def derive_params(p: ModelParams) -> DerivedParams:
    """Evaluate the (gamma, x) map on principal branches and classify the regime.

    Raises DegenerateParams when sin(tau/2) = 0 (tau a multiple of 2 pi).
    """
    s_half = math.sin(p.tau / 2.0)
    if abs(s_half) < _DEGENERATE_TOL:
        raise DegenerateParams(f"tau = {p.tau} is a multiple of 2*pi")
    r = math.sin(p.delta * p.tau / 2.0) / s_half

    gapped = abs(r) > 1.0
    if gapped:
        # principal arccos of |r| > 1 sits on the imaginary axis (or pi + i eta
        # for r < -1); enforce eta >= 0.
        gamma = cmath.acos(r)
        if gamma.imag < 0:
            gamma = gamma.conjugate()
    else:
        gamma = complex(math.acos(max(-1.0, min(1.0, r))), 0.0)

    x = 1j * cmath.asinh(cmath.sin(gamma) * math.tan(p.tau / 2.0))
    # Clean up roundoff on the axis the regime pins down.
    if gapped and abs(x.imag) < 1e-12:
        x = complex(x.real, 0.0)
    if not gapped and abs(x.real) < 1e-12:
        x = complex(0.0, x.imag)

    if gapped:
        regime = Regime.GAPPED
        eta = gamma.imag if abs(gamma.real) < 1e-12 else math.nan
        shift = x.real
    else:
        eta = math.nan
        shift = x.imag
        free = abs(p.delta) < _DEGENERATE_TOL or (
            p.delta != 0.0
            and abs((p.tau * p.delta / (2.0 * math.pi)) - round(p.tau * p.delta / (2.0 * math.pi)))
            < 1e-12
        )
        regime = Regime.FREE_POINT if free else Regime.GAPLESS

    return DerivedParams(
        gamma=gamma,
        eta=eta,
        x=x,
        shift=shift,
        regime=regime,
        tau_th=threshold_tau(p.delta),
        delta=p.delta,
        tau=p.tau,
    )


def detect_root_of_unity(
    gamma: float, max_nu: int = 8, tol: float = 1e-9
) -> RootOfUnityPoint | None:
    """Search for (nu1, nu2) with |gamma - pi/(nu1 + 1/nu2)| < tol.

    Among multiple matches the one with the fewest strings wins.  Absence is a
    valid result (None).
    """
    if not 0.0 < gamma < math.pi:
        raise ValueError("gamma must lie in (0, pi)")
    best: RootOfUnityPoint | None = None
    for nu1 in range(1, max_nu + 1):
        for nu2 in range(1, max_nu + 1):
            cand = math.pi / (nu1 + 1.0 / nu2)
            if abs(gamma - cand) < tol:
                point = RootOfUnityPoint(nu1, nu2)
                if best is None or point.Nb < best.Nb:
                    best = point
    return best


def tau_for_gamma(
    delta: float,
    gamma_target: float,
    bracket: tuple[float, float],
    tol: float = 1e-12,
) -> float:
    """Invert the gamma(Delta, tau) map by bisection on cos(gamma).

    The bracket endpoints must straddle the target, i.e. the residual
    sin(Delta tau/2)/sin(tau/2) - cos(gamma_target) must change sign.
    """

    def resid(tau: float) -> float:
        return math.sin(delta * tau / 2.0) / math.sin(tau / 2.0) - math.cos(gamma_target)

    a, b = bracket
    fa, fb = resid(a), resid(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0:
        raise NoBracket(f"gamma = {gamma_target} not straddled by tau in {bracket}")
    while b - a > tol:
        m = 0.5 * (a + b)
        fm = resid(m)
        if fm == 0.0:
            return m
        if fa * fm < 0:
            b, fb = m, fm
        else:
            a, fa = m, fm
    return 0.5 * (a + b)
