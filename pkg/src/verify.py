"""
Self-checks of the special functions and the metric against closed forms,
identities, an independent quadrature oracle and the geometric properties the
density satisfies.

Each check returns a CheckResult; run_checks() collects them for the verify
subcommand. The quick level uses reduced samples, full the acceptance sizes.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np

from src import gamma_kernel
from src.config import log_and_status
from src.conemetric import (
    curvature_residual,
    f_a,
    infinity_ratio,
    near_zero_discrepancy,
    rho_at,
    rho_half,
    scan_alpha_monotonicity,
    scan_theta_monotonicity,
    triangle_contains,
)
from src.distance import axis_distance, geodesic_distance, phi, radial_lower_bound
from src.elliptic import E_a, K_a, K_a_half_closed_form, elliott_residual
from src.errors import ConeMetricError
from src.hypergeom import cut_constant, hyp2f1, new_identity_residual
from src.models import CutPoint, HypParams, SignatureParam
from src.oracle import quad_axis_distance, quad_E, quad_K

VERIFY_LEVELS = ("quick", "full")

# Sample sizes per level.
LEVEL_SIZES = {
    "quick": {
        "elliott_grid": 5,
        "elliott_a": (0.25, 0.5),
        "identity_samples": 10,
        "triangle_points": 50,
        "boundary_points": 5,
        "curvature_points": 10,
        "axis_pairs": 2,
        "axis_a": (0.25,),
        "asymptotic_alphas": (0.5,),
        "theta_n": 20,
        "lower_bound_pairs": 20,
        "oracle_points": 10,
    },
    "full": {
        "elliott_grid": 20,
        "elliott_a": (0.1, 0.25, 0.5, 0.75, 0.9),
        "identity_samples": 50,
        "triangle_points": 500,
        "boundary_points": 20,
        "curvature_points": 100,
        "axis_pairs": 10,
        "axis_a": (0.25, 0.5, 0.75),
        "asymptotic_alphas": (0.25, 0.5, 0.75),
        "theta_n": 50,
        "lower_bound_pairs": 200,
        "oracle_points": 100,
    },
}

AXIS_PAIRS = (
    (0.5, 4.0), (1.0, 10.0), (0.1, 0.5), (2.0, 3.0), (0.05, 20.0),
    (0.3, 0.9), (5.0, 50.0), (0.01, 0.02), (1.5, 1.6), (10.0, 100.0),
)


@dataclass
class CheckResult:
    """Outcome of one self-check."""

    name: str
    passed: bool
    worst: float
    tolerance: float
    samples: int
    detail: str = ""


def _result(name: str, errors: Iterable[float], tolerance: float, detail: str = "") -> CheckResult:
    errors = list(errors)
    worst = max(errors) if errors else 0.0
    passed = bool(errors) and all(math.isfinite(e) for e in errors) and worst <= tolerance
    return CheckResult(name, passed, worst, tolerance, len(errors), detail)


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference)


# ============================================================================
# CLOSED FORMS AND IDENTITIES
# ============================================================================

def check_closed_forms(sizes: Dict, rng: np.random.Generator) -> List[CheckResult]:
    k_errors = []
    for a in np.arange(1, 10) / 10.0:
        s = SignatureParam(float(a))
        k_errors.append(_relative(K_a(s, 0.5).value.real, K_a_half_closed_form(s)))
    rho_errors = []
    for alpha in (0.0, 0.25, 0.5, 0.75, 0.9):
        s = SignatureParam.from_alpha(alpha)
        rho_errors.append(_relative(rho_at(s, 0.5), rho_half(s)))
    return [
        _result("K_a(1/2) closed form", k_errors, 1e-11),
        _result("rho(1/2) closed form", rho_errors, 1e-11),
    ]


def check_elliott(sizes: Dict, rng: np.random.Generator) -> List[CheckResult]:
    n = sizes["elliott_grid"]
    errors = []
    for a in sizes["elliott_a"]:
        s = SignatureParam(a)
        for im in np.linspace(-0.9, 0.9, n):
            for re in np.linspace(-0.8, 0.9, n):
                pt = CutPoint(complex(float(re), float(im)))
                if pt.is_real and not 0 < pt.z.real < 1:
                    continue
                errors.append(elliott_residual(s, pt))
    return [_result("Elliott identity", errors, 1e-10)]


def check_new_identity(sizes: Dict, rng: np.random.Generator) -> List[CheckResult]:
    samples = rng.uniform(0.05, 0.95, size=(sizes["identity_samples"], 2))
    errors = [new_identity_residual(float(a), float(x)) for a, x in samples]
    return [_result("hypergeometric identity from f_a = f_(1-a)", errors, 1e-10)]


def check_triangle_map(sizes: Dict, rng: np.random.Generator) -> List[CheckResult]:
    outside = []
    for _ in range(sizes["triangle_points"]):
        s = SignatureParam(float(rng.uniform(0.05, 0.95)))
        z = complex(rng.uniform(-3.0, 4.0), rng.uniform(0.01, 3.0))
        outside.append(0.0 if triangle_contains(s, f_a(s, z)) else 1.0)
    boundary = []
    for a in (0.25, 0.5, 0.75):
        s = SignatureParam(a)
        sin_a = math.sin(math.pi * a)
        for x in np.logspace(-2, 2, sizes["boundary_points"]):
            boundary.append(abs(f_a(s, complex(-float(x), 0.0)).real - sin_a))
    return [
        _result("f_a maps into the triangle", outside, 0.0, "worst = fraction of points outside"),
        _result("Re f_a(-x) = sin(pi a)", boundary, 1e-10),
    ]


def check_curvature(sizes: Dict, rng: np.random.Generator) -> List[CheckResult]:
    errors = []
    for _ in range(sizes["curvature_points"]):
        alpha = float(rng.choice((0.0, 0.25, 0.5, 0.75)))
        z = complex(rng.uniform(-1.5, 2.5), rng.uniform(0.2, 1.5))
        errors.append(curvature_residual(SignatureParam.from_alpha(alpha), z))
    return [_result("curvature equation (extrapolated 5-point Laplacian)", errors, 1e-4)]


# ============================================================================
# DISTANCE AND ASYMPTOTICS
# ============================================================================

def _phi_infinity_from_gauss(s: SignatureParam) -> float:
    """Phi_a at the end of the axis, from the Gauss value of F(a,a;1;1) with a < 1/2."""
    a = min(s.a, 1.0 - s.a)
    gauss = hyp2f1(HypParams(a, a, 1.0), 1.0).value.real
    return -0.5 * math.log(cut_constant(a) / gauss - math.cos(math.pi * a))


def check_distance(sizes: Dict, rng: np.random.Generator) -> List[CheckResult]:
    quad_errors = []
    for a in sizes["axis_a"]:
        s = SignatureParam(a)
        for x, y in AXIS_PAIRS[:sizes["axis_pairs"]]:
            quad_errors.append(abs(axis_distance(s, x, y) - quad_axis_distance(s, x, y)))
    infinity_errors = []
    for a in (0.1, 0.25, 0.4):
        s = SignatureParam(a)
        infinity_errors.append(abs(phi(s, math.inf) - _phi_infinity_from_gauss(s)))
    return [
        _result("axis distance vs quadrature of rho(-t)", quad_errors, 1e-9),
        _result("Phi_a(inf) = -1/2 log cos(pi a)", infinity_errors, 1e-12),
    ]


def check_asymptotics(sizes: Dict, rng: np.random.Generator) -> List[CheckResult]:
    ratio_errors = [abs(infinity_ratio(SignatureParam.from_alpha(alpha), 1e8) - 1.0)
                    for alpha in sizes["asymptotic_alphas"]]
    zero_errors = [near_zero_discrepancy(SignatureParam.from_alpha(alpha), 1e-8, refined=True)
                   for alpha in (0.0, 0.5)]
    return [
        _result("rho(-x) x^(1+alpha) -> exp(c_inf) at x=1e8", ratio_errors, 0.01),
        _result("near-zero law at |z|=1e-8", zero_errors, 1e-6),
    ]


def check_monotonicity(sizes: Dict, rng: np.random.Generator) -> List[CheckResult]:
    n = sizes["theta_n"]
    theta_ok = [
        scan_theta_monotonicity(SignatureParam.from_alpha(0.0), 0.7, n),
        scan_theta_monotonicity(SignatureParam.from_alpha(0.6), 2.0, n),
    ]
    alpha_ok = [scan_alpha_monotonicity(-3.0, np.linspace(0.0, 0.9, 10))]
    degeneration = [rho_half(SignatureParam.from_alpha(alpha)) for alpha in (0.9, 0.99, 0.999)]
    alpha_ok.append(degeneration[0] > degeneration[1] > degeneration[2])

    violations = []
    for _ in range(sizes["lower_bound_pairs"]):
        s = SignatureParam(float(rng.uniform(0.1, 0.9)))
        z1 = complex(rng.uniform(-3.0, 4.0), rng.uniform(0.01, 3.0))
        z2 = complex(rng.uniform(-3.0, 4.0), rng.uniform(0.01, 3.0))
        if abs(z1) > abs(z2):
            z1, z2 = z2, z1
        violations.append(max(0.0, radial_lower_bound(s, z1, z2) - geodesic_distance(s, z1, z2)))

    return [
        _result("rho non-increasing in theta", [0.0 if ok else 1.0 for ok in theta_ok], 0.0),
        _result("rho non-increasing in alpha", [0.0 if ok else 1.0 for ok in alpha_ok], 0.0),
        _result("radial lower bound <= distance", violations, 1e-10),
    ]


def check_oracle(sizes: Dict, rng: np.random.Generator) -> List[CheckResult]:
    k_errors = []
    e_errors = []
    for _ in range(sizes["oracle_points"]):
        s = SignatureParam(float(rng.choice((0.2, 0.5, 0.8))))
        x = float(rng.uniform(-5.0, 0.95))
        k_errors.append(_relative(K_a(s, x).value.real, quad_K(s, x)))
        e_errors.append(_relative(E_a(s, x).value.real, quad_E(s, x)))
    return [
        _result("K_a vs tanh-sinh quadrature", k_errors, 1e-9),
        _result("E_a vs tanh-sinh quadrature", e_errors, 1e-9),
    ]


def check_gamma(sizes: Dict, rng: np.random.Generator) -> List[CheckResult]:
    xs = rng.uniform(0.01, 0.99, size=20)
    reflection = [abs(gamma_kernel.gamma(x) * gamma_kernel.gamma(1 - x) * math.sin(math.pi * x) / math.pi - 1.0)
                  for x in xs]
    return [_result("gamma reflection formula", reflection, 1e-12)]


CHECKS: Dict[str, Callable[[Dict, np.random.Generator], List[CheckResult]]] = {
    "gamma": check_gamma,
    "closed_forms": check_closed_forms,
    "elliott": check_elliott,
    "new_identity": check_new_identity,
    "triangle_map": check_triangle_map,
    "curvature": check_curvature,
    "distance": check_distance,
    "asymptotics": check_asymptotics,
    "monotonicity": check_monotonicity,
    "oracle": check_oracle,
}


def run_checks(level: str = "quick", seed: int = 20240607, only: Optional[Iterable[str]] = None,
               status_fn=None) -> List[CheckResult]:
    """
    Run the self-checks.

    Args:
        level: "quick" or "full"
        seed: Seed for the random sample points
        only: Optional subset of CHECKS keys
        status_fn: Optional progress callback

    Returns:
        One CheckResult per assertion; a check that raises is reported as failed
    """
    if level not in VERIFY_LEVELS:
        raise ValueError(f"unknown verify level {level!r}; expected one of {VERIFY_LEVELS}")
    sizes = LEVEL_SIZES[level]
    rng = np.random.default_rng(seed)
    names = list(only) if only is not None else list(CHECKS)

    results = []
    for name in names:
        log_and_status(status_fn, f"Running check group '{name}' ({level})")
        try:
            results.extend(CHECKS[name](sizes, rng))
        except ConeMetricError as e:
            logging.error(f"Check group '{name}' raised: {e}")
            results.append(CheckResult(name, False, math.inf, 0.0, 0, f"raised {type(e).__name__}: {e}"))
    failed = [r.name for r in results if not r.passed]
    if failed:
        log_and_status(status_fn, f"❌ {len(failed)} check(s) failed: {', '.join(failed)}", level="error")
    else:
        log_and_status(status_fn, f"✓ All {len(results)} checks passed")
    return results


def format_report(results: List[CheckResult]) -> str:
    """Fixed-width pass/fail table."""
    width = max(len(r.name) for r in results) if results else 10
    lines = [f"{'check':<{width}}  {'result':<6}  {'worst':>10}  {'tolerance':>10}  {'n':>5}"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{r.name:<{width}}  {status:<6}  {r.worst:>10.3e}  {r.tolerance:>10.3e}  {r.samples:>5}"
        if r.detail and not r.passed:
            line += f"  {r.detail}"
        lines.append(line)
    return "\n".join(lines)
