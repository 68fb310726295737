"""
Exception types raised by the special-function and metric modules.

Domain and parameter problems subclass ValueError so callers that only know
about the builtin hierarchy still catch them; numerical failures subclass
ArithmeticError.
"""


class ConeMetricError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ConeMetricError, ValueError):
    """Argument outside the region where the requested quantity is defined."""


class SingularPointError(DomainError):
    """Evaluation requested at a puncture or cone point."""

    def __init__(self, point, message=None):
        self.point = point
        super().__init__(message or f"singular point z={format_point(point)}")


class CutSideMissingError(DomainError):
    """A point on the branch cut (1, inf) was given without a side tag."""


class DegenerateBoundaryError(DomainError):
    """Boundary sample has fewer than two distinct points."""


class ParameterError(ConeMetricError, ValueError):
    """Invalid hypergeometric or signature parameters."""


class ParameterConditioningError(ParameterError):
    """Parameters so close to a degenerate value that connection coefficients blow up."""


class NoConvergenceError(ConeMetricError, ArithmeticError):
    """Series, continuation or quadrature did not reach its tolerance."""


class QuadratureError(NoConvergenceError):
    """Quadrature did not converge within the level budget."""


class DivergenceError(ConeMetricError, ArithmeticError):
    """Quantity is infinite at the requested point."""


class SideLimitMismatchError(ConeMetricError, ArithmeticError):
    """The two side limits of a real-valued combination disagree on a ray."""


def format_point(z) -> str:
    """Render a point the way the CLI prints it: integers without a trailing .0."""
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:g}"
    return f"{z.real:g}{z.imag:+g}i"
