"""
Independent quadrature oracles for K_a, E_a and the axis distance.

K_a and E_a are integrated from their Euler integral representations with
tanh-sinh (double exponential) quadrature on [0, 1]. None of this goes
through the hypergeometric module, so agreement between the two is a real
cross-check.
"""

import logging
import math
import warnings
from typing import Callable, Tuple

import numpy as np
from scipy import integrate

from src.conemetric import rho_at
from src.errors import DomainError, QuadratureError
from src.models import SignatureParam

TANH_SINH_TOL = 1e-12
TANH_SINH_START_STEP = 0.5
TANH_SINH_MAX_LEVEL = 12
TANH_SINH_MIN_LEVEL = 3
# Integrand must decay below exp(-TAIL_EXPONENT) at the ends of the u range.
TAIL_EXPONENT = 50.0

AXIS_QUAD_EPSABS = 1e-10
AXIS_QUAD_EPSREL = 1e-12
AXIS_QUAD_LIMIT = 200


def tanh_sinh(log_integrand: Callable[[np.ndarray, np.ndarray], np.ndarray],
              decay: float,
              tol: float = TANH_SINH_TOL,
              max_level: int = TANH_SINH_MAX_LEVEL) -> Tuple[float, float]:
    """
    Integrate g over [0, 1] with the substitution t = 1/(1 + exp(-pi sinh u)).

    The integrand is supplied as log g(t) in terms of log t and log(1 - t),
    both computed without cancellation, so endpoint singularities of the form
    t^p (1-t)^q never produce infinities.

    Args:
        log_integrand: Vectorised function (log_t, log_1mt) -> log g(t)
        decay: Smallest algebraic decay exponent of g(t) dt/du at either end
        tol: Stop when successive levels differ by less than tol (relative to max(1, |I|))
        max_level: Number of step halvings before giving up

    Returns:
        (integral, error estimate from the last two levels)

    Raises:
        QuadratureError: not converged after max_level halvings
    """
    if decay <= 0:
        raise DomainError(f"tanh-sinh needs a positive decay exponent, got {decay}")
    u_max = math.asinh(TAIL_EXPONENT / (math.pi * decay))

    def weighted(u: np.ndarray) -> np.ndarray:
        v = math.pi * np.sinh(u)
        log_t = -np.logaddexp(0.0, -v)
        log_1mt = -np.logaddexp(0.0, v)
        log_jacobian = log_t + log_1mt + np.log(math.pi * np.cosh(u))
        return np.exp(log_integrand(log_t, log_1mt) + log_jacobian)

    h = TANH_SINH_START_STEP
    n = int(math.ceil(u_max / h))
    running = float(np.sum(weighted(h * np.arange(-n, n + 1))))
    estimate = h * running
    err = math.inf
    for level in range(1, max_level + 1):
        h /= 2.0
        n = int(math.ceil(u_max / h))
        odd = np.arange(-n + (1 - n % 2), n + 1, 2)
        running += float(np.sum(weighted(h * odd)))
        refined = h * running
        err = abs(refined - estimate)
        estimate = refined
        if level >= TANH_SINH_MIN_LEVEL and err <= tol * max(1.0, abs(estimate)):
            logging.debug(f"tanh-sinh converged at level {level} (h={h:g}, err={err:.2e})")
            return estimate, err

    error_msg = f"tanh-sinh quadrature not converged after {max_level} levels (err={err:.2e})"
    logging.error(error_msg)
    raise QuadratureError(error_msg)


def _elliptic_log_integrand(a: float, x: float, power: float):
    """log of t^(1-2a) (1-t^2)^(a-1) (1-x t^2)^power, with 1 - x t^2 = (1-t^2) + (1-x) t^2."""
    def log_integrand(log_t, log_1mt):
        t = np.exp(log_t)
        log_1pt = np.log1p(t)
        log_1mt2 = log_1mt + log_1pt
        if x == 1.0:
            log_1mxt2 = log_1mt2
        else:
            log_1mxt2 = np.logaddexp(log_1mt2, math.log(1.0 - x) + 2.0 * log_t)
        return (1.0 - 2.0 * a) * log_t + (a - 1.0) * log_1mt2 + power * log_1mxt2
    return log_integrand


def quad_K(s: SignatureParam, x: float) -> float:
    """
    K_a(x) = sin(pi a) * int_0^1 t^(1-2a) (1-t^2)^(a-1) (1-x t^2)^(-a) dt for real x < 1.
    """
    x = float(x)
    if not x < 1:
        error_msg = f"quadrature for K_a needs real x < 1, got {x}"
        logging.error(error_msg)
        raise DomainError(error_msg)
    a = s.a
    # After the Jacobian: t^(2-2a) at 0 and (1-t)^a at 1.
    value, _ = tanh_sinh(_elliptic_log_integrand(a, x, -a), decay=min(a, 2.0 - 2.0 * a))
    return math.sin(math.pi * a) * value


def quad_E(s: SignatureParam, x: float) -> float:
    """
    E_a(x) = sin(pi a) * int_0^1 ((1-x t^2)/(1-t^2))^(1-a) t^(1-2a) dt for real x <= 1.
    """
    x = float(x)
    if not x <= 1:
        error_msg = f"quadrature for E_a needs real x <= 1, got {x}"
        logging.error(error_msg)
        raise DomainError(error_msg)
    a = s.a
    decay = min(a, 2.0 - 2.0 * a) if x < 1 else min(1.0, 2.0 - 2.0 * a)
    value, _ = tanh_sinh(_elliptic_log_integrand(a, x, 1.0 - a), decay=decay)
    return math.sin(math.pi * a) * value


def quad_axis_distance(s: SignatureParam, x: float, y: float) -> float:
    """
    Adaptive quadrature of rho(-t) over [x, y], 0 < x <= y.

    Integrates rho(-e^u) e^u over [log x, log y] so ranges spanning many
    decades stay within the subinterval budget.

    Raises:
        DomainError: x, y not ordered positive reals
        QuadratureError: scipy reports non-convergence, or its error estimate
            exceeds the requested tolerance
    """
    if not (0 < x <= y):
        error_msg = f"axis quadrature needs 0 < x <= y, got x={x}, y={y}"
        logging.error(error_msg)
        raise DomainError(error_msg)
    if x == y:
        return 0.0

    def integrand(u: float) -> float:
        t = math.exp(u)
        return rho_at(s, -t) * t

    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, abserr = integrate.quad(integrand, math.log(x), math.log(y),
                                           epsabs=AXIS_QUAD_EPSABS, epsrel=AXIS_QUAD_EPSREL,
                                           limit=AXIS_QUAD_LIMIT)
        except integrate.IntegrationWarning as e:
            error_msg = f"axis quadrature on [{x}, {y}] did not converge: {e}"
            logging.error(error_msg)
            raise QuadratureError(error_msg) from e

    tolerance = max(AXIS_QUAD_EPSABS, AXIS_QUAD_EPSREL * abs(value))
    if not math.isfinite(value) or abserr > 10 * tolerance:
        error_msg = f"axis quadrature on [{x}, {y}] reports error {abserr:.2e} above {tolerance:.2e}"
        logging.error(error_msg)
        raise QuadratureError(error_msg)
    logging.debug(f"axis quadrature on [{x}, {y}] = {value!r} (abserr {abserr:.2e})")
    return float(value)
