"""
Real-argument gamma family: gamma, log_gamma, digamma and beta.

Every gamma argument reached by the connection formulas is real and
positive, so a fixed 13-term scaled Lanczos rational is enough. Regenerate or
re-check the coefficients with scripts/generate_lanczos.py.
"""

import logging
import math

import numpy as np

from src.errors import DomainError

LANCZOS_G = 6.024680040776729583740234375

# Rational approximation of the scaled Lanczos sum, highest degree first.
LANCZOS_NUM = np.array([
    0.006061842346248906525783753964555936883222,
    0.5098416655656676188125178644804694509993,
    19.51992788247617482847860966235652136208,
    449.9445569063168119446858607650988409623,
    6955.999602515376140356310115515198987526,
    75999.29304014542649875303443598909137092,
    601859.6171681098786670226533699352302507,
    3481712.15498064590882071018964774556468,
    14605578.08768506808414169982791359218571,
    43338889.32467613834773723740590533316085,
    86363131.28813859145546927288977868422342,
    103794043.1163445451906271053616070238554,
    56906521.91347156388090791033559122686859,
])

LANCZOS_DEN = np.array([
    1.0, 66.0, 1925.0, 32670.0, 357423.0, 2637558.0, 13339535.0,
    45995730.0, 105258076.0, 150917976.0, 120543840.0, 39916800.0, 0.0,
])

# B_{2k}/(2k) for the digamma asymptotic series.
DIGAMMA_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
)

DIGAMMA_LIFT = 6.0

# Largest argument for which gamma() does not overflow a double.
GAMMA_MAX_ARG = 171.6


def _check_positive(x: float, name: str) -> float:
    x = float(x)
    if not (math.isfinite(x) and x > 0.0):
        error_msg = f"{name} requires a finite positive argument, got {x}"
        logging.error(error_msg)
        raise DomainError(error_msg)
    return x


def lanczos_sum_expg_scaled(x: float) -> float:
    """Scaled Lanczos sum L(x) with gamma(x) = L(x) * (x+g-1/2)^(x-1/2) / exp(x-1/2)."""
    return float(np.polyval(LANCZOS_NUM, x) / np.polyval(LANCZOS_DEN, x))


def gamma(x: float) -> float:
    """
    Gamma function for real x > 0.

    Args:
        x: Positive finite argument

    Returns:
        Gamma(x), exact for integers up to 21

    Raises:
        DomainError: x is not finite and positive, or gamma(x) overflows
    """
    x = _check_positive(x, "gamma")
    if x == math.floor(x) and x <= 21:
        return float(math.factorial(int(x) - 1))
    if x > GAMMA_MAX_ARG:
        error_msg = f"gamma({x}) overflows a double"
        logging.error(error_msg)
        raise DomainError(error_msg)

    zgh = x + LANCZOS_G - 0.5
    # Split the power so zgh^(x-1/2) cannot overflow before the division.
    half_power = zgh ** ((x - 0.5) / 2.0)
    return lanczos_sum_expg_scaled(x) * (half_power / math.exp(x - 0.5)) * half_power


def log_gamma(x: float) -> float:
    """Natural log of gamma(x) for real x > 0."""
    x = _check_positive(x, "log_gamma")
    if x == 1.0 or x == 2.0:
        return 0.0
    zgh = x + LANCZOS_G - 0.5
    return math.log(lanczos_sum_expg_scaled(x)) + (x - 0.5) * (math.log(zgh) - 1.0)


def reciprocal_gamma(x: float) -> float:
    """
    1/gamma(x) for any finite real x, zero at the poles.

    Arguments below 1 are lifted with 1/gamma(x) = x/gamma(x+1); connection
    formulas need this for parameters such as a-1 with a in (0, 1).
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"reciprocal_gamma requires a finite argument, got {x}")
    factor = 1.0
    while x < 1.0:
        factor *= x
        x += 1.0
    if factor == 0.0:
        return 0.0
    if x > GAMMA_MAX_ARG:
        return factor * math.exp(-log_gamma(x))
    return factor / gamma(x)


def digamma(x: float) -> float:
    """
    Digamma psi(x) = gamma'(x)/gamma(x) for real x > 0.

    Lifts x to at least 6 with psi(x) = psi(x+1) - 1/x, then applies the
    asymptotic series in 1/x^2.
    """
    x = _check_positive(x, "digamma")
    shift = 0.0
    while x < DIGAMMA_LIFT:
        shift -= 1.0 / x
        x += 1.0

    r = 1.0 / (x * x)
    series = 0.0
    for coeff in reversed(DIGAMMA_ASYMPTOTIC):
        series = (series + coeff) * r
    return shift + math.log(x) - 0.5 / x - series


def beta(a: float, b: float) -> float:
    """Beta function B(a, b) = gamma(a) gamma(b) / gamma(a+b) for a, b > 0."""
    a = _check_positive(a, "beta")
    b = _check_positive(b, "beta")
    if a + b < GAMMA_MAX_ARG:
        return gamma(a) * gamma(b) / gamma(a + b)
    return math.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))
