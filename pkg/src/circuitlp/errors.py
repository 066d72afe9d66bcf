"""Exception types shared across the package."""


class CircuitLpError(Exception):
    """Base class for all circuitlp errors."""


class ParseError(CircuitLpError):
    """Malformed instance text; carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DimensionMismatchError(CircuitLpError):
    """Vector/matrix dimensions inconsistent with the declared shape."""


class RankDeficientError(CircuitLpError):
    """Constraint matrix has linearly dependent rows where full row rank is required."""


class SingularBasisError(CircuitLpError):
    """Requested basis columns are not invertible."""


class ZeroVectorError(CircuitLpError):
    """A nonzero vector was required."""


class ZeroDirectionError(CircuitLpError):
    """Augmentation direction must be nonzero."""


class NotInKernelError(CircuitLpError):
    """Vector expected in ker(A) fails A*x = 0."""


class TooLargeError(CircuitLpError):
    """Instance exceeds the cap for exhaustive circuit enumeration."""


class UnboundedRatioLPError(CircuitLpError):
    """The minimum-ratio oracle LP is unbounded: some nonnegative kernel ray has
    negative cost, i.e. the calling LP itself is unbounded."""


class InfeasibleStartError(CircuitLpError):
    """Supplied start point (or target basis) is not feasible."""


class IterationCapError(CircuitLpError):
    """A walk exceeded its iteration budget; treated as a failure, never truncated."""


class GenerationFailedError(CircuitLpError):
    """Random instance generation exhausted its retry budget."""


class NoLinearSolutionError(CircuitLpError):
    """A*x = b admits no solution at all (rank of [A|b] exceeds rank of A)."""


class LinealitySpaceError(CircuitLpError):
    """General-form system is not pointed: rk([A; B]) < n."""


class InvariantBreachError(CircuitLpError):
    """A provably parameter-free invariant failed: indicates a bug, not a bad
    imbalance estimate."""


class KappaFailure(CircuitLpError):
    """Sound failure signal: the current imbalance estimate is below the true
    value.  Callers square the estimate and retry."""

    def __init__(self, message, ratio_calls=0, support_calls=0):
        super().__init__(message)
        self.ratio_calls = ratio_calls
        self.support_calls = support_calls


class EstimateCeilingError(CircuitLpError):
    """Doubling exhausted its budget; the failure detector is likely buggy."""
