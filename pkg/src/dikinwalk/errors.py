"""Exception types shared across the package."""


class DikinWalkError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(DikinWalkError, ValueError):
    """Operands have incompatible shapes."""


class NotPositiveDefinite(DikinWalkError, ArithmeticError):
    """Cholesky factorization hit a nonpositive pivot.

    For barrier Hessians this signals a point on (or outside) the boundary,
    or a rank-deficient constraint matrix.
    """

    def __init__(self, pivot: int, message: str | None = None):
        self.pivot = pivot
        super().__init__(message or f"nonpositive pivot at index {pivot}")


class ParseError(DikinWalkError, ValueError):
    """Malformed polytope text; carries the offending 1-based line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class DimensionError(ParseError):
    """A constraint row does not have exactly n+1 numbers."""


class ZeroRow(ParseError):
    """A constraint row has an all-zero normal vector."""


class InvalidSpec(DikinWalkError, ValueError):
    """Unrecognized or out-of-range polytope generator spec."""


class BoundaryPoint(DikinWalkError, ValueError):
    """A point that must be strictly interior has a nonpositive slack."""


class IdenticalPoints(DikinWalkError, ValueError):
    """Chord through two points is undefined because they coincide."""


class UnboundedChord(DikinWalkError, ArithmeticError):
    """No constraint limits the ray; the polytope is unbounded along it."""


class NoConvergence(DikinWalkError, ArithmeticError):
    """Iteration budget exhausted before reaching the requested tolerance."""

    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"no convergence after {iterations} iterations (residual {residual:.3e})"
        )


class OutOfRange(DikinWalkError, ValueError):
    """A numeric argument lies outside its documented domain."""


class PreconditionViolated(DikinWalkError, ValueError):
    """Inputs do not satisfy the hypothesis of the quantity being checked."""


class NotIsotropic(DikinWalkError, ValueError):
    """Row set does not resolve the identity (B^T B != I)."""
