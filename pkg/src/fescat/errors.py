"""Exception types raised by the fescat library."""


class FescatError(Exception):
    """Base class for all library errors."""


class GammaPoleError(FescatError, ValueError):
    """Gamma function evaluated at (or within 1e-12 of) a non-positive integer."""


class SeriesConvergenceError(FescatError, ArithmeticError):
    """A power series failed to reach its tail tolerance within the term cap."""


class DomainError(FescatError, ValueError):
    """Argument outside the documented domain of an operation."""


class OverflowRangeError(FescatError, ArithmeticError):
    """A special-function value over- or underflowed double precision."""


class DenominatorError(FescatError, ArithmeticError):
    """A denominator is too close to zero for a meaningful result."""


class PoleError(FescatError, ArithmeticError):
    """Evaluation point coincides with a pole of the interpolation formula."""


class NonHerglotzError(FescatError, ArithmeticError):
    """Im m(kappa^2) <= 0 where a Herglotz function was expected."""


class BranchError(FescatError, ArithmeticError):
    """Phase expression landed on (or too near) a logarithmic branch point."""


class TailFitError(FescatError, ArithmeticError):
    """Fitted large-argument tail is implausibly large for the data."""


class TailDivergenceError(FescatError, ArithmeticError):
    """Oscillatory tail correction is too large relative to the head integral."""


class SingularSystemError(FescatError, ArithmeticError):
    """Discretized integral-equation matrix is numerically singular."""


class RowsMissingError(FescatError, ValueError):
    """Kernel rows were not stored but are required for this check."""


class IntegrationError(FescatError, ArithmeticError):
    """Radial integration failed to produce a usable matching value."""


class StageError(FescatError, RuntimeError):
    """A reconstruction pipeline stage failed; carries the stage name."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage '{stage}': {message}")
        self.stage = stage
