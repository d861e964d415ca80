"""Exception hierarchy shared by all modules."""


class DCRootsError(Exception):
    """Base class for all library errors."""


class DomainError(DCRootsError, ValueError):
    """Input outside the mathematical domain of an operation."""


class CapacityError(DCRootsError, ValueError):
    """Input size exceeds a hard numerical-safety limit."""


class SolverError(DCRootsError, RuntimeError):
    """Root solver failed to converge; carries best residuals found."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = tuple(residuals) if residuals is not None else ()


class ContourError(DCRootsError, RuntimeError):
    """Contour quadrature did not settle on an integer count."""


class TracerError(DCRootsError, RuntimeError):
    """Trajectory predictor-corrector broke down."""


class MatchingError(DCRootsError, RuntimeError):
    """Root matching across a step or segment join was ambiguous."""


class ConstructionError(DCRootsError, RuntimeError):
    """Extremal construction failed verification after all retries."""

    def __init__(self, message, counts=None):
        super().__init__(message)
        self.counts = counts


class TheoremViolation(DCRootsError, AssertionError):
    """A certified theorem-backed invariant failed; never swallowed."""
