"""
Geodesic distances for the conical metric.

Along the negative real axis the distance integrates in closed form through
Phi_a; between arbitrary points it comes from the isometric embedding f_a
into the half plane with metric |dw| / (2 Im w).
"""

import logging
import math
from typing import Callable, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from src.conemetric import f_a
from src.errors import DivergenceError, DomainError, SingularPointError
from src.hypergeom import cut_constant, hyp2f1
from src.models import HypParams, SignatureParam

# Crossing-point search on each component of the real axis minus {0, 1}.
AXIS_SCAN_POINTS = 24
AXIS_EDGE = 1e-9
AXIS_XATOL = 1e-10


def _check_point(z) -> complex:
    z = complex(z)
    if z == 0 or z == 1:
        logging.error(f"distance requested at puncture z={z.real:g}")
        raise SingularPointError(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"point {z} is not finite")
    return z


def phi(s: SignatureParam, x: float) -> float:
    """
    Axis potential Phi_a(x) for the point -x, x > 0 or x = math.inf.

    Phi_a(x) = -1/2 log( C_a F(a,a;2a;1/(1+x)) / F(a,a;1;x/(1+x)) - cos(pi a) )

    with C_a = gamma(a)/(gamma(2a) gamma(1-a)). The quantity inside the log is
    Im f_a(-x + i0). At infinity Phi_a = -1/2 log|cos(pi a)|, infinite for a = 1/2.

    Raises:
        DomainError: x <= 0 or NaN
        DivergenceError: x = inf with a = 1/2
    """
    x = float(x)
    if not x > 0:
        error_msg = f"Phi_a needs x > 0, got {x}"
        logging.error(error_msg)
        raise DomainError(error_msg)
    a = s.a
    if math.isinf(x):
        cos_a = abs(math.cos(math.pi * a))
        if s.alpha == 0.0 or cos_a == 0.0:
            error_msg = "Phi_1/2(inf) is infinite: infinity is a cusp when alpha = 0"
            logging.error(error_msg)
            raise DivergenceError(error_msg)
        return -0.5 * math.log(cos_a)

    # F(a,a;1;x/(1+x)) = (1+x)^a F(a,1-a;1;-x)
    g = hyp2f1(HypParams(a, 1.0 - a, 1.0), -x).value.real
    h = hyp2f1(HypParams(a, a, 2.0 * a), 1.0 / (1.0 + x)).value.real
    height = cut_constant(a) * h * (1.0 + x) ** (-a) / g - math.cos(math.pi * a)
    return -0.5 * math.log(height)


def axis_distance(s: SignatureParam, x: float, y: float) -> float:
    """
    Distance between -x and -y along the negative axis, 0 < x <= y.

    Returns:
        Phi_a(y) - Phi_a(x)
    """
    if not (0 < x <= y):
        error_msg = f"axis distance needs 0 < x <= y, got x={x}, y={y}"
        logging.error(error_msg)
        raise DomainError(error_msg)
    if x == y:
        return 0.0
    return phi(s, y) - phi(s, x)


def half_plane_distance(w1: complex, w2: complex) -> float:
    """
    arctanh |(w2 - w1)/(w2 - conj w1)| for w1, w2 in the upper half plane.

    1 - r is formed from 4 Im w1 Im w2 so far-apart points keep full precision.
    """
    num = abs(w2 - w1)
    if num == 0:
        return 0.0
    den = abs(w2 - w1.conjugate())
    r = num / den
    one_minus_r = 4.0 * w1.imag * w2.imag / (den * (den + num))
    return 0.5 * (math.log1p(r) - math.log(one_minus_r))


def _axis_pieces() -> Tuple[Tuple[Callable[[float], float], float, float], ...]:
    """Parametrisations of (-inf, 0), (0, 1) and (1, inf) by bounded intervals."""
    quarter = math.pi / 2
    return (
        (lambda p: -math.tan(p), AXIS_EDGE, quarter - AXIS_EDGE),
        (lambda p: p, AXIS_EDGE, 1.0 - AXIS_EDGE),
        (lambda p: 1.0 + math.tan(p), AXIS_EDGE, quarter - AXIS_EDGE),
    )


def _through_axis(s: SignatureParam, upper: complex, mirrored: complex) -> float:
    """min over real t of d(upper, t) + d(t, mirrored), both points in the closed upper half plane."""
    w_upper = f_a(s, upper)
    w_mirrored = f_a(s, mirrored)

    def total(t: float) -> float:
        w_t = f_a(s, complex(t, 0.0))
        return half_plane_distance(w_upper, w_t) + half_plane_distance(w_t, w_mirrored)

    best = math.inf
    for to_axis, lo, hi in _axis_pieces():
        def objective(p, to_axis=to_axis):
            return total(to_axis(p))

        grid = np.linspace(lo, hi, AXIS_SCAN_POINTS)
        values = [objective(p) for p in grid]
        k = int(np.argmin(values))
        bracket = (grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)])
        result = minimize_scalar(objective, bounds=bracket, method="bounded",
                                 options={"xatol": AXIS_XATOL})
        piece_best = min(float(result.fun), values[k])
        logging.debug(f"axis crossing search: piece minimum {piece_best:.15g} at t={to_axis(result.x):.6g}")
        best = min(best, piece_best)
    return best


def geodesic_distance(s: SignatureParam, z1: complex, z2: complex) -> float:
    """
    Distance between two points of the plane minus {0, 1}.

    Points in the same closed half plane use the half-plane formula on their
    f_a images (after conjugating into the upper half plane). Points strictly
    in opposite half planes use the shortest path through the real axis,
    found by a bounded 1-D search on each of its three components.

    Raises:
        SingularPointError: z1 or z2 in {0, 1}
    """
    z1 = _check_point(z1)
    z2 = _check_point(z2)
    if z1 == z2:
        return 0.0
    if z1.imag >= 0 and z2.imag >= 0:
        return half_plane_distance(f_a(s, z1), f_a(s, z2))
    if z1.imag <= 0 and z2.imag <= 0:
        return half_plane_distance(f_a(s, z1.conjugate()), f_a(s, z2.conjugate()))
    upper, lower = (z1, z2) if z1.imag > 0 else (z2, z1)
    return _through_axis(s, upper, lower.conjugate())


def radial_lower_bound(s: SignatureParam, z1: complex, z2: complex) -> float:
    """
    Lower bound d(z1, z2) >= d(-|z1|, -|z2|) = axis_distance(|z1|, |z2|).

    Args:
        z1, z2: Points outside {0, 1} with |z1| <= |z2|
    """
    z1 = _check_point(z1)
    z2 = _check_point(z2)
    if abs(z1) > abs(z2):
        error_msg = f"radial bound needs |z1| <= |z2|, got {abs(z1):g} > {abs(z2):g}"
        logging.error(error_msg)
        raise DomainError(error_msg)
    return axis_distance(s, abs(z1), abs(z2))
