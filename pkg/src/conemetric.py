"""
Density of the hyperbolic metric on the twice-punctured sphere with a cone
point of angle 2*pi*alpha at infinity:

    rho(z) = pi cos(pi alpha / 2) / (8 |z (1-z)| Re(K_a(z) K_a(1 - conj z)))

together with the conformal map f_a onto the triangle Delta_a, asymptotic
constants, a Mobius pushforward, the plane-domain lower bound and the
monotonicity scans.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from src import gamma_kernel
from src.elliptic import K_a
from src.errors import (
    DegenerateBoundaryError,
    DivergenceError,
    DomainError,
    SideLimitMismatchError,
    SingularPointError,
)
from src.models import CutPoint, SignatureParam

SIDE_AGREEMENT_TOL = 1e-11
SCAN_TOL = 1e-12
LOG2 = math.log(2.0)


@dataclass(frozen=True)
class ConeDensityQuery:
    """A point z outside {0, 1} at which to evaluate rho for signature s."""

    s: SignatureParam
    z: complex

    def __post_init__(self):
        z = complex(self.z)
        object.__setattr__(self, "z", z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise DomainError(f"point {z} is not finite")
        if z == 0 or z == 1:
            logging.error(f"density requested at puncture z={z.real:g}")
            raise SingularPointError(z)


@dataclass(frozen=True)
class AsymptoticConstants:
    """
    Constant terms of log rho near the punctures and the cone point.

    Near 0 and 1: log rho = -log|z| - log log(1/|z|) + c0 + o(1).
    Near inf (alpha > 0): log rho = exponent_inf * log|z| + c_inf + o(1).
    For alpha = 0 infinity is a cusp: exponent -1 with the double-log law
    and constant -log 2, flagged by cusp_at_infinity.
    """

    c0: float
    c1: float
    c_inf: float
    exponent_inf: float
    cusp_at_infinity: bool = False


# ============================================================================
# DENSITY
# ============================================================================

def _factor_points(z: complex) -> List[Tuple[CutPoint, CutPoint]]:
    """Side-resolved (z, 1 - conj z) pairs; two pairs when one factor lies on the cut."""
    w = 1 - z.conjugate()
    above, below = CutPoint.from_above(z), CutPoint.from_below(z)
    if not above.is_real or 0 < z.real < 1:
        return [(CutPoint(z), CutPoint(w))]
    if above.on_cut:
        return [(above, CutPoint(w)), (below, CutPoint(w))]
    return [(CutPoint(z), CutPoint.from_above(w)), (CutPoint(z), CutPoint.from_below(w))]


def rho_with_diagnostics(s: SignatureParam, z: complex) -> Tuple[float, str, float]:
    """
    Density at z with the evaluation path used.

    Returns:
        (rho, method label "method_of_K(z)/method_of_K(1-conj z)", est_rel_err)

    Raises:
        SingularPointError: z in {0, 1}
        SideLimitMismatchError: side limits on a ray disagree
        DivergenceError: the Re(...) denominator is not positive
    """
    z = ConeDensityQuery(s, z).z

    products = []
    label = ""
    err = 0.0
    for pz, pw in _factor_points(z):
        kz = K_a(s, pz)
        kw = K_a(s, pw)
        products.append((kz.value * kw.value).real)
        label = f"{kz.method.value}/{kw.method.value}"
        err = max(err, kz.est_rel_err + kw.est_rel_err)

    if len(products) == 2:
        p_plus, p_minus = products
        scale = max(abs(p_plus), abs(p_minus))
        if abs(p_plus - p_minus) > SIDE_AGREEMENT_TOL * scale:
            error_msg = f"side limits of Re(K K') disagree at z={z.real:g}: {p_plus!r} vs {p_minus!r}"
            logging.error(error_msg)
            raise SideLimitMismatchError(error_msg)
    re_product = sum(products) / len(products)

    denominator = 8.0 * abs(z * (1 - z)) * re_product
    if not (denominator > 0 and math.isfinite(denominator)):
        error_msg = f"density denominator {denominator!r} is not positive at z={z}"
        logging.error(error_msg)
        raise DivergenceError(error_msg)
    value = math.pi * math.cos(math.pi * s.alpha / 2) / denominator
    return value, label, err


def rho(q: ConeDensityQuery) -> float:
    """Density rho_alpha(z) of the conical hyperbolic metric."""
    return rho_with_diagnostics(q.s, q.z)[0]


def rho_at(s: SignatureParam, z: complex) -> float:
    """Shorthand for rho(ConeDensityQuery(s, z))."""
    return rho(ConeDensityQuery(s, z))


def rho_half(s: SignatureParam) -> float:
    """Closed form rho(1/2) = 8 pi^2 / (G((1+al)/4)^2 G((1-al)/4)^2 cos(pi al/2))."""
    alpha = s.alpha
    g_plus = gamma_kernel.gamma((1 + alpha) / 4)
    g_minus = gamma_kernel.gamma((1 - alpha) / 4)
    return 8.0 * math.pi ** 2 / (g_plus ** 2 * g_minus ** 2 * math.cos(math.pi * alpha / 2))


# ============================================================================
# TRIANGLE MAP
# ============================================================================

def _check_closed_upper(z: complex) -> complex:
    z = complex(z)
    if z == 0 or z == 1:
        raise SingularPointError(z)
    if z.imag < 0:
        error_msg = f"f_a is defined on the closed upper half plane; got z={z}"
        logging.error(error_msg)
        raise DomainError(error_msg)
    return z


def f_a(s: SignatureParam, z: complex) -> complex:
    """
    Conformal map f_a(z) = i K_a(1-z) / K_a(z) of the upper half plane onto Delta_a.

    Real arguments use the limit from above, so f_a(-x) = i K_a^-(1+x) / K_a(-x).
    """
    z = _check_closed_upper(z)
    k = K_a(s, CutPoint.from_above(z)).value
    k_star = K_a(s, CutPoint.from_below(1 - z)).value
    return 1j * k_star / k


def f_a_deriv(s: SignatureParam, z: complex) -> complex:
    """f_a'(z) = -i pi sin(pi a) / (4 z (1-z) K_a(z)^2)."""
    z = _check_closed_upper(z)
    k = K_a(s, CutPoint.from_above(z)).value
    return -1j * math.pi * math.sin(math.pi * s.a) / (4.0 * z * (1 - z) * k * k)


def triangle_contains(s: SignatureParam, w: complex, tol: float = 1e-9) -> bool:
    """Membership of w in the closure of Delta_a = {0 < Re w < sin(pi a), |2 w sin(pi a) - 1| > 1}, up to tol."""
    sin_a = math.sin(math.pi * s.a)
    return (w.imag >= -tol
            and -tol <= w.real <= sin_a + tol
            and abs(2.0 * w * sin_a - 1.0) >= 1.0 - tol)


# ============================================================================
# ASYMPTOTICS AND TRANSFORMS
# ============================================================================

def asymptotic_constants(s: SignatureParam) -> AsymptoticConstants:
    """Constant terms of log rho at 0, 1 and infinity."""
    alpha = s.alpha
    if alpha == 0.0:
        return AsymptoticConstants(-LOG2, -LOG2, -LOG2, -1.0, cusp_at_infinity=True)
    c_inf = (2.0 * gamma_kernel.log_gamma((1 + alpha) / 2) + gamma_kernel.log_gamma(1 - alpha)
             - 2.0 * gamma_kernel.log_gamma((1 - alpha) / 2) - gamma_kernel.log_gamma(alpha))
    return AsymptoticConstants(-LOG2, -LOG2, c_inf, -(1.0 + alpha))


def near_zero_shift(s: SignatureParam) -> float:
    """kappa_a = 2 psi(1) - psi(a) - psi(1-a), the O(1) shift inside log log(1/|z|)."""
    return (2.0 * gamma_kernel.digamma(1.0) - gamma_kernel.digamma(s.a)
            - gamma_kernel.digamma(1.0 - s.a))


def near_zero_discrepancy(s: SignatureParam, r: float, refined: bool = False) -> float:
    """
    |log rho(r) + log r + log L + log 2| for small r > 0.

    L is log(1/r), or log(1/r) + kappa_a when refined. The plain law only
    converges like kappa_a / log(1/r); the refined one is exact up to O(r log r).
    """
    if not (0 < r < 1):
        raise DomainError(f"near-zero law needs 0 < r < 1, got {r}")
    log_term = math.log(1.0 / r) + (near_zero_shift(s) if refined else 0.0)
    return abs(math.log(rho_at(s, r)) + math.log(r) + math.log(log_term) + LOG2)


def infinity_ratio(s: SignatureParam, x: float) -> float:
    """rho(-x) x^(1+alpha) / exp(c_inf); tends to 1 as x grows (alpha > 0)."""
    constants = asymptotic_constants(s)
    if constants.cusp_at_infinity:
        raise DomainError("alpha = 0 has a cusp at infinity; no power law")
    return rho_at(s, -x) * x ** (-constants.exponent_inf) / math.exp(constants.c_inf)


def pushforward_density(s: SignatureParam, z: complex) -> float:
    """Density rho(1/z)/|z|^2 of the metric with the cone point moved to 0."""
    z = complex(z)
    if z == 0:
        logging.error("pushforward density requested at the cone point z=0")
        raise SingularPointError(z, "singular point z=0 (cone point)")
    if z == 1:
        raise SingularPointError(z)
    return rho_at(s, 1 / z) / abs(z) ** 2


def _log_laplacian(s: SignatureParam, z: complex, centre: float, h: float) -> float:
    ring = sum(math.log(rho_at(s, z + step)) for step in (h, -h, 1j * h, -1j * h))
    return (ring - 4.0 * centre) / (h * h)


def curvature_residual(s: SignatureParam, z: complex, h: float = 1e-3) -> float:
    """
    Relative gap between the Laplacian of log rho at z and 4 rho^2.

    The Laplacian is the Richardson combination (4 L(h/2) - L(h)) / 3 of two
    5-point stencils, which cancels the h^2 truncation term.
    """
    z = complex(z)
    centre = math.log(rho_at(s, z))
    laplacian = (4.0 * _log_laplacian(s, z, centre, h / 2) - _log_laplacian(s, z, centre, h)) / 3.0
    target = 4.0 * rho_at(s, z) ** 2
    return abs(laplacian - target) / target


def domain_lower_bound(boundary: Sequence[complex], s: SignatureParam, z: complex) -> float:
    """
    Lower bound for the density at z of any admissible conical metric on a
    domain whose boundary contains the given points:

        max over ordered pairs (w0, w1) of rho((z - w0)/(w1 - w0)) / |w1 - w0|
    """
    z = complex(z)
    points = list(dict.fromkeys(complex(w) for w in boundary))
    if len(points) < 2:
        error_msg = f"boundary needs at least two distinct points, got {len(points)}"
        logging.error(error_msg)
        raise DegenerateBoundaryError(error_msg)
    if z in points:
        raise SingularPointError(z, f"point z={z} lies on the boundary sample")

    best = 0.0
    for w0 in points:
        for w1 in points:
            if w0 == w1:
                continue
            span = w1 - w0
            best = max(best, rho_at(s, (z - w0) / span) / abs(span))
    return best


# ============================================================================
# MONOTONICITY SCANS
# ============================================================================

def _non_increasing(values: Sequence[float]) -> bool:
    tol = SCAN_TOL * max(values)
    return all(later <= earlier + tol for earlier, later in zip(values, values[1:]))


def theta_profile(s: SignatureParam, r: float, n: int) -> List[float]:
    """rho(r e^{i theta_k}) for theta_k = k pi/(n+1), k = 1..n."""
    if not (r > 0 and math.isfinite(r)):
        raise DomainError(f"radius r={r} must be positive and finite")
    if n < 3:
        raise DomainError(f"theta scan needs n >= 3, got {n}")
    step = math.pi / (n + 1)
    return [rho_at(s, r * complex(math.cos(k * step), math.sin(k * step))) for k in range(1, n + 1)]


def scan_theta_monotonicity(s: SignatureParam, r: float, n: int) -> bool:
    """True iff rho is non-increasing in theta on the upper half of the circle |z| = r."""
    values = theta_profile(s, r, n)
    result = _non_increasing(values)
    logging.debug(f"theta scan alpha={s.alpha:g} r={r:g} n={n}: {'non-increasing' if result else 'NOT monotone'}")
    return result


def scan_alpha_monotonicity(z: complex, alphas: Sequence[float]) -> bool:
    """True iff rho_alpha(z) is non-increasing along the ascending list of cone angles."""
    alphas = list(alphas)
    if not alphas:
        raise DomainError("alpha scan needs at least one cone angle")
    if any(later < earlier for earlier, later in zip(alphas, alphas[1:])):
        raise DomainError("cone angles must be given in ascending order")
    values = [rho_at(SignatureParam.from_alpha(alpha), z) for alpha in alphas]
    return _non_increasing(values)
