"""
Generalized complete elliptic integrals K_a, E_a and their complements.

    K_a(z) = (pi/2) F(a, 1-a; 1; z)
    E_a(z) = (pi/2) F(a-1, 1-a; 1; z)

The argument z plays the role of r^2 in the classical notation. Complements
are K_a'(z) = K_a(1-z) and E_a'(z) = E_a(1-z); a side tag on z maps to the
opposite side of 1 - z.
"""

import logging
import math

from src import gamma_kernel
from src.errors import DomainError, SingularPointError
from src.hypergeom import hyp2f1
from src.models import CutPoint, EvalResult, HypParams, SignatureParam

HALF_PI = math.pi / 2


def _as_point(pt) -> CutPoint:
    return pt if isinstance(pt, CutPoint) else CutPoint(complex(pt))


def K_a(s: SignatureParam, pt) -> EvalResult:
    """
    K_a(z) = (pi/2) F(a, 1-a; 1; z).

    Args:
        s: Signature parameter a
        pt: CutPoint (or complex off the cut); z = 1 diverges

    Returns:
        EvalResult carrying the value and the underlying F diagnostics
    """
    pt = _as_point(pt)
    return hyp2f1(HypParams(s.a, 1.0 - s.a, 1.0), pt).scaled(HALF_PI)


def E_a(s: SignatureParam, pt) -> EvalResult:
    """
    E_a(z) = (pi/2) F(a-1, 1-a; 1; z).

    Continuous up to z = 1, where it takes the Gauss value
    (pi/2)/(gamma(2-a) gamma(a)). On (1, inf) the two side limits are
    complex conjugates.
    """
    pt = _as_point(pt)
    return hyp2f1(HypParams(s.a - 1.0, 1.0 - s.a, 1.0), pt).scaled(HALF_PI)


def K_a_star(s: SignatureParam, pt) -> EvalResult:
    """Complementary integral K_a(1 - z)."""
    return K_a(s, _as_point(pt).reflected())


def E_a_star(s: SignatureParam, pt) -> EvalResult:
    """Complementary integral E_a(1 - z)."""
    return E_a(s, _as_point(pt).reflected())


def K_a_deriv(s: SignatureParam, pt) -> EvalResult:
    """
    dK_a/dz = (1-a) [E_a(z) - (1-z) K_a(z)] / (z (1-z)).

    The error estimate adds the cancellation in E_a - (1-z) K_a to the
    errors of the two factors; the method is that of K_a.

    Raises:
        SingularPointError: z = 0 or z = 1
    """
    pt = _as_point(pt)
    z = pt.z
    if z == 0 or z == 1:
        error_msg = f"K_a derivative formula is singular at z={z.real:g}"
        logging.error(error_msg)
        raise SingularPointError(z, error_msg)
    k = K_a(s, pt)
    e = E_a(s, pt)
    k_term = (1 - z) * k.value
    gap = e.value - k_term
    scale = abs(e.value) + abs(k_term)
    err = (k.est_rel_err + e.est_rel_err) * scale / abs(gap) if gap != 0 else math.inf
    return EvalResult((1.0 - s.a) * gap / (z * (1 - z)), k.terms_used + e.terms_used, err, k.method)


def elliott_residual(s: SignatureParam, pt) -> float:
    """
    Normalized residual of Elliott's identity

        K E' + E K' - K K' = pi sin(pi a) / (4 (1-a)).

    Args:
        s: Signature parameter a
        pt: CutPoint (or complex) off the rays (-inf, 0] and [1, inf)

    Returns:
        |lhs - rhs| / rhs
    """
    pt = _as_point(pt)
    if pt.is_real and not 0 < pt.z.real < 1:
        error_msg = f"Elliott identity is checked off the real rays; got z={pt.z.real:g}"
        logging.error(error_msg)
        raise DomainError(error_msg)
    k = K_a(s, pt).value
    e = E_a(s, pt).value
    k_star = K_a_star(s, pt).value
    e_star = E_a_star(s, pt).value
    rhs = math.pi * math.sin(math.pi * s.a) / (4.0 * (1.0 - s.a))
    return abs(k * e_star + e * k_star - k * k_star - rhs) / rhs


def K_a_half_closed_form(s: SignatureParam) -> float:
    """K_a(1/2) = gamma((1-a)/2) gamma(a/2) sin(pi a) / (4 sqrt(pi))."""
    a = s.a
    return (gamma_kernel.gamma((1 - a) / 2) * gamma_kernel.gamma(a / 2)
            * math.sin(math.pi * a) / (4.0 * math.sqrt(math.pi)))


def E_a_half(s: SignatureParam) -> float:
    """E_a(1/2) from Elliott's identity at its fixed point z = 1/2."""
    k = K_a_half_closed_form(s)
    rhs = math.pi * math.sin(math.pi * s.a) / (4.0 * (1.0 - s.a))
    return (k * k + rhs) / (2.0 * k)
