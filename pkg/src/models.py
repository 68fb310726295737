"""
Value types shared by the special-function, metric and CLI modules.

Complex numbers are plain Python ``complex`` values; the dataclasses here
only carry the extra tags (cut side, evaluation method, signature) that the
numerical code needs.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

from src.errors import CutSideMissingError, DomainError, ParameterConditioningError, ParameterError

# Parameters closer than this to a degenerate value are rejected.
CONDITIONING_TOL = 1e-8


class Side(str, Enum):
    """Approach side for a point on a branch cut of the real axis."""

    INTERIOR = "interior"
    PLUS = "plus"
    MINUS = "minus"

    def flipped(self) -> "Side":
        if self is Side.PLUS:
            return Side.MINUS
        if self is Side.MINUS:
            return Side.PLUS
        return self


class Method(str, Enum):
    """How a hypergeometric value was obtained."""

    DIRECT_SERIES = "direct_series"
    PFAFF = "pfaff"
    LOG_CONNECTION = "log_connection"
    CUT_FORMULA = "cut_formula"
    TAYLOR_CONTINUATION = "taylor_continuation"
    GAUSS_VALUE = "gauss_value"


def is_nonpositive_integer(x: float, tol: float = 0.0) -> bool:
    """True when x lies within tol of 0, -1, -2, ..."""
    nearest = round(x)
    return nearest <= 0 and abs(x - nearest) <= tol


@dataclass(frozen=True)
class HypParams:
    """Parameters (a, b; c) of the Gauss function F(a, b; c; z)."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"hypergeometric parameter {name} must be finite")
        if is_nonpositive_integer(self.c):
            error_msg = f"c={self.c} is zero or a negative integer"
            logging.error(error_msg)
            raise ParameterError(error_msg)
        if is_nonpositive_integer(self.c, CONDITIONING_TOL):
            error_msg = f"c={self.c} is within {CONDITIONING_TOL} of a non-positive integer"
            logging.error(error_msg)
            raise ParameterConditioningError(error_msg)

    def swapped(self) -> "HypParams":
        return HypParams(self.b, self.a, self.c)

    def canonical(self) -> "HypParams":
        """Order the upper parameters so that a <= b."""
        return self if self.a <= self.b else self.swapped()


@dataclass(frozen=True)
class CutPoint:
    """
    A point of the plane together with an approach side.

    Side tags are meaningful on the real axis only, where they select the
    limit from above (plus) or below (minus). A tag is mandatory on the cut
    (1, inf) of F(a, b; c; z).
    """

    z: complex
    side: Side = Side.INTERIOR

    def __post_init__(self):
        z = complex(self.z)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "side", Side(self.side))
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise DomainError(f"point {z} is not finite")
        if self.side is not Side.INTERIOR and z.imag != 0:
            raise DomainError(f"side tag {self.side.value} given for non-real point {z}")
        if self.side is Side.INTERIOR and self.on_cut:
            error_msg = f"point {z.real} lies on the cut (1, inf); a plus/minus side is required"
            logging.error(error_msg)
            raise CutSideMissingError(error_msg)

    @property
    def on_cut(self) -> bool:
        return self.z.imag == 0 and self.z.real > 1

    @property
    def is_real(self) -> bool:
        return self.z.imag == 0

    @classmethod
    def from_above(cls, z: complex) -> "CutPoint":
        """Limit from the closed upper half plane."""
        z = complex(z)
        return cls(z, Side.PLUS if z.imag == 0 else Side.INTERIOR)

    @classmethod
    def from_below(cls, z: complex) -> "CutPoint":
        """Limit from the closed lower half plane."""
        z = complex(z)
        return cls(z, Side.MINUS if z.imag == 0 else Side.INTERIOR)

    def reflected(self) -> "CutPoint":
        """The point 1 - z, approached from the opposite side."""
        return CutPoint(1 - self.z, self.side.flipped())


@dataclass(frozen=True)
class EvalResult:
    """A function value with its convergence diagnostics."""

    value: complex
    terms_used: int
    est_rel_err: float
    method: Method

    def scaled(self, factor: complex) -> "EvalResult":
        return EvalResult(self.value * factor, self.terms_used, self.est_rel_err, self.method)


@dataclass(frozen=True)
class SignatureParam:
    """
    The parameter a in (0, 1) of the generalized elliptic integrals.

    The cone angle at infinity is 2*pi*alpha with alpha = |1 - 2a|; a and
    1 - a describe the same metric.
    """

    a: float

    def __post_init__(self):
        a = float(self.a)
        object.__setattr__(self, "a", a)
        if not (0.0 < a < 1.0):
            error_msg = f"signature parameter a={a} must lie in (0, 1)"
            logging.error(error_msg)
            raise ParameterError(error_msg)
        if min(a, 1.0 - a) < CONDITIONING_TOL:
            error_msg = f"signature parameter a={a} is within {CONDITIONING_TOL} of 0 or 1"
            logging.error(error_msg)
            raise ParameterConditioningError(error_msg)

    @property
    def alpha(self) -> float:
        return abs(1.0 - 2.0 * self.a)

    @classmethod
    def from_alpha(cls, alpha: float) -> "SignatureParam":
        """Representative a = (1 - alpha)/2 for a cone angle alpha in [0, 1)."""
        if not (0.0 <= alpha < 1.0):
            error_msg = f"cone angle alpha={alpha} must lie in [0, 1)"
            logging.error(error_msg)
            raise DomainError(error_msg)
        return cls((1.0 - alpha) / 2.0)

    def complement(self) -> "SignatureParam":
        return SignatureParam(1.0 - self.a)
