"""Exception hierarchy shared by all solver modules."""


class TrotterXXZError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateParams(TrotterXXZError):
    """The Trotter step is a multiple of 2*pi; the (gamma, x) map is singular."""


class NoBracket(TrotterXXZError):
    """A bisection bracket does not straddle the target value."""


class InvalidSize(TrotterXXZError):
    """A grid size or system size is outside the supported range."""


class PoleProximity(TrotterXXZError):
    """A kernel or closed-form evaluator was called too close to a pole."""


class GridMismatch(TrotterXXZError):
    """A grid function does not live on the grid of the operation."""


class NoConvergence(TrotterXXZError):
    """An iterative solve exceeded its iteration budget."""


class NegativeDensity(TrotterXXZError):
    """A converged density has negative excursions beyond the noise floor."""


class RecursionPole(TrotterXXZError):
    """1 + eta_{n-1} vanished at a lattice point required by the recursion."""


class LimitNotConverged(TrotterXXZError):
    """The beta -> 0 extrapolation did not settle within tolerance."""


class UnsupportedRoot(TrotterXXZError):
    """The requested root-of-unity point is outside the supported family."""


class SizeBudgetExceeded(TrotterXXZError):
    """A dense finite-size computation was requested beyond the desk-scale budget."""


class DegeneracyUnresolved(TrotterXXZError):
    """A degenerate Floquet block could not be resolved for the diagonal ensemble."""


class RootMatchFailed(TrotterXXZError):
    """A Bethe root could not be paired with a Floquet eigenvector."""


class SingularGaudin(TrotterXXZError):
    """The Gaudin matrix is numerically singular."""


class InvalidFreePoint(TrotterXXZError):
    """(delta, tau) does not lie on one of the Gaussian lines."""
