"""Exception types shared across the package."""


class SaeRadialError(Exception):
    """Base class for all package-specific errors."""


class PoleError(SaeRadialError, ValueError):
    """A function was evaluated exactly at a pole of the Gamma function."""


class CancellationError(SaeRadialError, ArithmeticError):
    """Parameters sit too close to a degenerate point for the connection
    formula to retain accuracy; the caller should perturb and extrapolate."""


class AccuracyLossError(SaeRadialError, ValueError):
    """Argument outside the range where the series route is guaranteed."""


class RegimeError(SaeRadialError, ValueError):
    """Operation invoked on a problem whose near-origin regime does not
    support it."""


class BranchUnavailableError(SaeRadialError, ValueError):
    """Requested solution branch does not exist for the given problem."""


class NoBoundStateError(SaeRadialError, ValueError):
    """The requested configuration supports no bound level."""


class NoRootError(SaeRadialError, ValueError):
    """Coefficient signs admit no real zero radius."""


class BracketingError(SaeRadialError, RuntimeError):
    """A root bracket did not show the expected sign change."""


class UnsupportedProblemError(SaeRadialError, ValueError):
    """Problem class outside what the numerical routine handles."""


class UnnormalizedSolutionError(SaeRadialError, ValueError):
    """A routine requiring a unit-norm solution received one that is not."""
