"""
Gauss hypergeometric function F(a, b; c; z) on the cut plane C \\ [1, inf).

Values on the cut itself are available as side limits through CutPoint.
Evaluation picks one of:

  - the defining power series, for |z| <= 0.75;
  - the logarithmic connection formula in powers of 1 - z, whenever
    c - a - b is a non-negative integer and |1 - z| <= 0.75;
  - the Pfaff transform z -> z/(z-1), for Re z <= 1/2;
  - the cut formula for F(a, 1-a; 1; 1+x +- i0);
  - Taylor continuation along the hypergeometric ODE from an anchor on the
    imaginary axis, for everything the transforms above cannot reach
    (neighbourhoods of exp(+-i pi/3) and large |z| near Re z = 1/2).
"""

import cmath
import logging
import math
import sys

from src import gamma_kernel
from src.errors import (
    CutSideMissingError,
    DivergenceError,
    DomainError,
    NoConvergenceError,
    ParameterError,
)
from src.models import CutPoint, EvalResult, HypParams, Method, Side

EPS = sys.float_info.epsilon

SERIES_TOL = 1e-17
SERIES_QUIET_TERMS = 3
MAX_TERMS = 10000
ACCEPT_TOL = 1e-12

REGION_RADIUS = 0.75
ANCHOR_RADIUS = 0.7
STEP_RATIO = 0.5
MAX_STEPS = 5000

# Tolerance for recognising c - a - b as an integer.
INTEGER_TOL = 1e-14


# ============================================================================
# SUMMATION KERNELS
# ============================================================================

def _series(a, b, c, z, derivative=False):
    """
    Sum the defining series, optionally with its term-wise derivative.

    Returns:
        (value, derivative, terms_used, est_rel_err)
    """
    coef = 1.0
    power = 1.0 + 0j
    prev_power = 0j
    total = 0j
    deriv = 0j
    abs_total = 0.0
    quiet = 0
    term = 0j
    n = 0
    for n in range(MAX_TERMS):
        term = coef * power
        total += term
        abs_total += abs(term)
        small = abs(term) <= SERIES_TOL * abs(total)
        if derivative:
            dterm = n * coef * prev_power
            deriv += dterm
            small = small and abs(dterm) <= SERIES_TOL * abs(deriv)
        if small:
            quiet += 1
            if quiet >= SERIES_QUIET_TERMS:
                break
        else:
            quiet = 0
        coef *= (a + n) * (b + n) / ((c + n) * (n + 1))
        prev_power = power
        power *= z
    else:
        tail = abs(term) / abs(total) if total != 0 else math.inf
        if tail > ACCEPT_TOL:
            error_msg = f"F({a}, {b}; {c}; {z}) series not converged after {MAX_TERMS} terms (tail {tail:.2e})"
            logging.error(error_msg)
            raise NoConvergenceError(error_msg)

    est = EPS * max(1.0, abs_total / abs(total)) if total != 0 else EPS
    return total, deriv, n + 1, est


def _log_one_minus(z: complex, side: Side) -> complex:
    """log(1 - z) on the principal branch, or its side limit on the cut."""
    if z.imag == 0 and z.real > 1 and side is not Side.INTERIOR:
        # 1 - (x + i0) = -(x-1) - i0 has argument -pi.
        arg = -math.pi if side is Side.PLUS else math.pi
        return complex(math.log(z.real - 1.0), arg)
    return cmath.log(1 - z)


def _log_connection(a, b, m, z, side=Side.INTERIOR):
    """
    F(a, b; a+b+m; z) expanded in powers of w = 1 - z.

    The m = 0 case is the classical logarithmic formula; m >= 1 adds the
    finite polynomial part. Requires a+m > 0 and b+m > 0.

    Returns:
        (value, terms_used, est_rel_err)
    """
    w = 1 - z
    log_w = _log_one_minus(z, side)
    c = a + b + m

    finite = 0j
    abs_finite = 0.0
    if m > 0:
        pref = (gamma_kernel.gamma(m) * gamma_kernel.gamma(c)
                * gamma_kernel.reciprocal_gamma(a + m) * gamma_kernel.reciprocal_gamma(b + m))
        coef = 1.0
        power = 1.0 + 0j
        for n in range(m):
            term = pref * coef * power
            finite += term
            abs_finite += abs(term)
            if n + 1 < m:
                coef *= (a + n) * (b + n) / ((n + 1) * (n + 1 - m))
            power *= w

    outer = -((-w) ** m) * gamma_kernel.gamma(c) * gamma_kernel.reciprocal_gamma(a) * gamma_kernel.reciprocal_gamma(b)

    psi_n1 = gamma_kernel.digamma(1.0)
    psi_nm1 = gamma_kernel.digamma(m + 1.0)
    psi_a = gamma_kernel.digamma(a + m)
    psi_b = gamma_kernel.digamma(b + m)
    coef = 1.0 / math.factorial(m)
    power = 1.0 + 0j
    series = 0j
    abs_series = 0.0
    quiet = 0
    term = 0j
    n = 0
    for n in range(MAX_TERMS):
        bracket = log_w - psi_n1 - psi_nm1 + psi_a + psi_b
        term = coef * power * bracket
        series += term
        abs_series += abs(term)
        if abs(term) <= SERIES_TOL * abs(series):
            quiet += 1
            if quiet >= SERIES_QUIET_TERMS:
                break
        else:
            quiet = 0
        coef *= (a + m + n) * (b + m + n) / ((n + 1) * (n + m + 1))
        psi_n1 += 1.0 / (n + 1)
        psi_nm1 += 1.0 / (n + m + 1)
        psi_a += 1.0 / (a + m + n)
        psi_b += 1.0 / (b + m + n)
        power *= w
    else:
        tail = abs(term) / abs(series) if series != 0 else math.inf
        if tail > ACCEPT_TOL:
            error_msg = f"logarithmic connection not converged at z={z} (tail {tail:.2e})"
            logging.error(error_msg)
            raise NoConvergenceError(error_msg)

    value = finite + outer * series
    abs_sum = abs_finite + abs(outer) * abs_series
    est = EPS * max(1.0, abs_sum / abs(value)) if value != 0 else EPS
    return value, m + n + 1, est


def _taylor_step(a, b, c, z0, f0, f1, h):
    """
    Advance (F, F') from z0 to z0 + h with the Taylor series of the ODE

        z(1-z) F'' + [c - (a+b+1) z] F' - ab F = 0.

    Works with the scaled coefficients s_k = t_k h^k so that large or tiny
    |h| never under- or overflows.
    """
    p0 = z0 * (1 - z0)
    p1 = 1 - 2 * z0
    q0 = c - (a + b + 1) * z0
    q1 = -(a + b + 1)
    r = -a * b

    s_prev = f0
    s_cur = f1 * h
    value = s_prev + s_cur
    dsum = s_cur
    abs_value = abs(s_prev) + abs(s_cur)
    quiet = 0
    k = 0
    for k in range(MAX_TERMS):
        s_next = -((p1 * (k + 1) * k + q0 * (k + 1)) * s_cur * h
                   + (-k * (k - 1) + q1 * k + r) * s_prev * h * h) / (p0 * (k + 2) * (k + 1))
        value += s_next
        dsum += (k + 2) * s_next
        abs_value += abs(s_next)
        if (abs(s_next) <= SERIES_TOL * abs(value)
                and (k + 2) * abs(s_next) <= SERIES_TOL * abs(dsum)):
            quiet += 1
            if quiet >= SERIES_QUIET_TERMS:
                break
        else:
            quiet = 0
        s_prev, s_cur = s_cur, s_next
    else:
        error_msg = f"Taylor step from {z0} by {h} did not converge"
        logging.error(error_msg)
        raise NoConvergenceError(error_msg)

    est = EPS * max(1.0, abs_value / abs(value)) if value != 0 else EPS
    return value, dsum / h, k + 3, est


def _continuation(a, b, c, z, sigma):
    """
    Carry F from the anchor i*0.7*sigma to z along a straight line.

    Every step stays within half the distance to the nearest singular point
    0 or 1, so each local Taylor series converges geometrically. The target
    may lie on the real axis, in which case the result is the limit from the
    half plane selected by sigma.

    Returns:
        (value, terms_used, est_rel_err)
    """
    anchor = complex(0.0, ANCHOR_RADIUS * sigma)
    value, deriv, terms, err = _series(a, b, c, anchor, derivative=True)
    cur = anchor
    for _ in range(MAX_STEPS):
        remaining = z - cur
        if remaining == 0:
            break
        h_max = STEP_RATIO * min(abs(cur), abs(1 - cur))
        last = abs(remaining) <= h_max
        h = remaining if last else remaining / abs(remaining) * h_max
        value, deriv, used, step_err = _taylor_step(a, b, c, cur, value, deriv, h)
        terms += used
        err += step_err
        if last:
            break
        cur = cur + h
    else:
        error_msg = f"continuation to z={z} exceeded {MAX_STEPS} steps"
        logging.error(error_msg)
        raise NoConvergenceError(error_msg)
    return value, terms, err


# ============================================================================
# FAMILY HELPERS
# ============================================================================

def _log_order(p: HypParams):
    """Integer m = c - a - b >= 0 usable by the logarithmic connection, else None."""
    m_float = p.c - p.a - p.b
    m = round(m_float)
    if m < 0 or abs(m_float - m) > INTEGER_TOL:
        return None
    if p.a + m <= 0 or p.b + m <= 0:
        return None
    return int(m)


def _is_elliptic_k_family(p: HypParams) -> bool:
    """True for parameters (a, 1-a; 1) with a in (0, 1)."""
    return p.c == 1.0 and abs(p.a + p.b - 1.0) <= INTEGER_TOL and 0.0 < p.a < 1.0


def cut_constant(a: float) -> float:
    """Connection constant gamma(a) / (gamma(2a) gamma(1-a))."""
    return gamma_kernel.gamma(a) / (gamma_kernel.gamma(2 * a) * gamma_kernel.gamma(1 - a))


def _gauss_value(p: HypParams) -> EvalResult:
    excess = p.c - p.a - p.b
    if excess <= INTEGER_TOL:
        error_msg = f"F({p.a}, {p.b}; {p.c}; z) diverges at z=1 (c-a-b={excess:g})"
        logging.error(error_msg)
        raise DivergenceError(error_msg)
    value = (gamma_kernel.gamma(p.c) * gamma_kernel.gamma(excess)
             * gamma_kernel.reciprocal_gamma(p.c - p.a) * gamma_kernel.reciprocal_gamma(p.c - p.b))
    return EvalResult(complex(value), 0, 4 * EPS, Method.GAUSS_VALUE)


def _cut_formula(s: float, x: float, side: Side) -> EvalResult:
    """F(s, 1-s; 1; 1+x) approached from the given side of the cut."""
    h = _evaluate(HypParams(s, s, 2 * s), CutPoint(1.0 / (1.0 + x)))
    g = _evaluate(HypParams(s, 1 - s, 1.0), CutPoint(-x))
    phase = cmath.exp(-1j * math.pi * s) if side is Side.PLUS else cmath.exp(1j * math.pi * s)
    first = cut_constant(s) * (1.0 + x) ** (-s) * h.value
    second = phase * g.value
    value = first - second
    err = (abs(first) * h.est_rel_err + abs(second) * g.est_rel_err) / abs(value) + 2 * EPS
    return EvalResult(value, h.terms_used + g.terms_used, err, Method.CUT_FORMULA)


def _evaluate(p: HypParams, pt: CutPoint) -> EvalResult:
    """Region dispatch; p must already be canonical."""
    a, b, c = p.a, p.b, p.c
    z, side = pt.z, pt.side
    m = _log_order(p)

    if z == 1:
        return _gauss_value(p)

    if pt.on_cut:
        if _is_elliptic_k_family(p):
            return _cut_formula(a, z.real - 1.0, side)
        if m is not None and abs(1 - z) <= REGION_RADIUS:
            value, terms, err = _log_connection(a, b, m, z, side)
            return EvalResult(value, terms, err, Method.LOG_CONNECTION)
        sigma = -1.0 if side is Side.MINUS else 1.0
        value, terms, err = _continuation(a, b, c, z, sigma)
        return EvalResult(value, terms, err, Method.TAYLOR_CONTINUATION)

    if abs(z) <= REGION_RADIUS and (z.real <= 0.5 or m is None):
        value, _, terms, err = _series(a, b, c, z)
        return EvalResult(value, terms, err, Method.DIRECT_SERIES)

    if m is not None and abs(1 - z) <= REGION_RADIUS:
        value, terms, err = _log_connection(a, b, m, z)
        return EvalResult(value, terms, err, Method.LOG_CONNECTION)

    if z.real <= 0.5:
        w = z / (z - 1)
        if abs(w) <= REGION_RADIUS:
            inner, _, terms, err = _series(a, c - b, c, w)
            value = (1 - z) ** (-a) * inner
            return EvalResult(value, terms, err + 2 * EPS, Method.PFAFF)

    sigma = -1.0 if (z.imag < 0 or (pt.is_real and side is Side.MINUS)) else 1.0
    value, terms, err = _continuation(a, b, c, z, sigma)
    return EvalResult(value, terms, err, Method.TAYLOR_CONTINUATION)


def _as_real_if_on_axis(result: EvalResult, pt: CutPoint) -> EvalResult:
    """Values on the real segment below 1 are real for real parameters."""
    if pt.is_real and pt.z.real < 1:
        return EvalResult(complex(result.value.real, 0.0), result.terms_used,
                          result.est_rel_err, result.method)
    return result


def _checked(result: EvalResult, where: str) -> EvalResult:
    if not (cmath.isfinite(result.value)) or result.est_rel_err >= 1:
        error_msg = f"{where}: evaluation lost all accuracy (est_rel_err={result.est_rel_err:.2e})"
        logging.error(error_msg)
        raise NoConvergenceError(error_msg)
    return result


# ============================================================================
# PUBLIC OPERATIONS
# ============================================================================

def hyp2f1_series(p: HypParams, z: complex) -> EvalResult:
    """
    Direct power series of F(a, b; c; z).

    Args:
        p: Parameters (a, b; c)
        z: Point inside the unit disk; intended for |z| <= 0.75

    Returns:
        EvalResult with method direct_series
    """
    z = complex(z)
    if abs(z) >= 1:
        error_msg = f"series for F diverges or converges too slowly at |z|={abs(z):.6g} >= 1"
        logging.error(error_msg)
        raise DomainError(error_msg)
    value, _, terms, err = _series(p.a, p.b, p.c, z)
    result = EvalResult(value, terms, err, Method.DIRECT_SERIES)
    return _checked(_as_real_if_on_axis(result, CutPoint(z)), "series")


def hyp2f1(p: HypParams, point) -> EvalResult:
    """
    F(a, b; c; z) anywhere on the cut plane, or a side limit on the cut.

    Args:
        p: Parameters (a, b; c)
        point: CutPoint, or a bare complex number for points off the cut

    Returns:
        EvalResult; real-valued (zero imaginary part) for real z < 1

    Raises:
        CutSideMissingError: bare real z > 1 given without a side
        DivergenceError: z = 1 with c - a - b <= 0
    """
    if not isinstance(point, CutPoint):
        point = CutPoint(complex(point))

    canonical = p.canonical()
    result = _evaluate(canonical, point)
    logging.debug(f"F({canonical.a:g}, {canonical.b:g}; {canonical.c:g}; {point.z}) via {result.method.value}")
    return _checked(_as_real_if_on_axis(result, point), "hyp2f1")


def hyp2f1_log_connection(a: float, b: float, z: complex, m: int = 0, side: Side = Side.INTERIOR) -> EvalResult:
    """
    F(a, b; a+b+m; z) by its expansion about z = 1.

    Args:
        a, b: Upper parameters with a+m > 0 and b+m > 0
        z: Point with |1 - z| < 1, z != 1
        m: Non-negative integer c - a - b (0 is the logarithmic case)
        side: Required when z lies on the cut (1, inf)

    Returns:
        EvalResult with method log_connection
    """
    z = complex(z)
    side = Side(side)
    if z == 1:
        error_msg = "logarithmic connection is not evaluated at z=1"
        logging.error(error_msg)
        raise DivergenceError(error_msg) if m == 0 else DomainError(error_msg)
    if abs(1 - z) >= 1:
        error_msg = f"logarithmic connection needs |1-z| < 1, got {abs(1 - z):.6g}"
        logging.error(error_msg)
        raise DomainError(error_msg)
    if m < 0 or a + m <= 0 or b + m <= 0:
        error_msg = f"logarithmic connection needs m >= 0, a+m > 0 and b+m > 0 (a={a}, b={b}, m={m})"
        logging.error(error_msg)
        raise ParameterError(error_msg)
    point = CutPoint(z, side)
    HypParams(a, b, a + b + m)  # validates c
    value, terms, err = _log_connection(a, b, int(m), point.z, point.side)
    return _checked(_as_real_if_on_axis(EvalResult(value, terms, err, Method.LOG_CONNECTION), point),
                    "log connection")


def hyp2f1_cut(p: HypParams, x: float, side: Side) -> EvalResult:
    """
    Side limit F(a, 1-a; 1; 1 + x +- i0) for x > 0.

    Args:
        p: Parameters of the form (a, 1-a; 1)
        x: Distance past the branch point, x > 0
        side: Side.PLUS (from above) or Side.MINUS (from below)

    Returns:
        EvalResult with method cut_formula
    """
    canonical = p.canonical()
    if not _is_elliptic_k_family(canonical):
        error_msg = f"cut formula needs parameters (a, 1-a; 1), got ({p.a}, {p.b}; {p.c})"
        logging.error(error_msg)
        raise ParameterError(error_msg)
    side = Side(side)
    if side is Side.INTERIOR:
        raise CutSideMissingError("cut formula needs a plus/minus side")
    if not (x > 0 and math.isfinite(x)):
        error_msg = f"cut formula needs x > 0, got {x}"
        logging.error(error_msg)
        raise DomainError(error_msg)
    return _checked(_cut_formula(canonical.a, float(x), side), "cut formula")


def new_identity_residual(a: float, x: float) -> float:
    """
    Normalized residual of

        C_a F(a,a;2a;1-x) F(1-a,1-a;1;x) - C_{1-a} F(1-a,1-a;2-2a;1-x) F(a,a;1;x)
            = 2 cos(pi a) F(a,a;1;x) F(1-a,1-a;1;x)

    with C_a = gamma(a)/(gamma(2a) gamma(1-a)), divided by the largest of the
    three term magnitudes.
    """
    if not (0 < a < 1):
        raise DomainError(f"a={a} must lie in (0, 1)")
    if not (0 < x < 1):
        raise DomainError(f"x={x} must lie in (0, 1)")
    b = 1.0 - a
    f_aa2a = hyp2f1(HypParams(a, a, 2 * a), 1 - x).value.real
    f_bb2b = hyp2f1(HypParams(b, b, 2 * b), 1 - x).value.real
    f_aa1 = hyp2f1(HypParams(a, a, 1.0), x).value.real
    f_bb1 = hyp2f1(HypParams(b, b, 1.0), x).value.real

    t1 = cut_constant(a) * f_aa2a * f_bb1
    t2 = cut_constant(b) * f_bb2b * f_aa1
    t3 = 2.0 * math.cos(math.pi * a) * f_aa1 * f_bb1
    scale = max(abs(t1), abs(t2), abs(t3))
    return abs(t1 - t2 - t3) / scale
