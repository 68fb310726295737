#!/usr/bin/env python3
"""
Check or regenerate the Lanczos coefficients used by src/gamma_kernel.py.

The stored rational approximates the scaled Lanczos sum

    L(x) = gamma(x) * exp(x - 1/2) / (x + g - 1/2)^(x - 1/2)

with denominator x (x+1) ... (x+11). By default this script measures the
relative error of gamma() and log_gamma() against mpmath on a dense grid of
(0, 10]. With --fit it interpolates a fresh numerator through 13 nodes in
high precision and prints it in the same descending-degree layout.

Usage:
    python scripts/generate_lanczos.py
    python scripts/generate_lanczos.py --fit --dps 60
"""

import argparse
import os
import sys

import mpmath
import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src import gamma_kernel  # noqa: E402


def scaled_sum(x, g):
    zgh = x + g - mpmath.mpf("0.5")
    half = mpmath.mpf("0.5")
    return mpmath.gamma(x) * mpmath.exp(x - half) / zgh ** (x - half)


def fit_numerator(dps: int):
    """Interpolate the degree-12 numerator through nodes x = 1/2, 1, ..., 13/2."""
    mpmath.mp.dps = dps
    g = mpmath.mpf(gamma_kernel.LANCZOS_G)
    den = [mpmath.mpf(int(c)) for c in gamma_kernel.LANCZOS_DEN]
    nodes = [mpmath.mpf(k) / 2 for k in range(1, 14)]
    rows = [[x ** (12 - j) for j in range(13)] for x in nodes]
    rhs = [scaled_sum(x, g) * mpmath.polyval(den, x) for x in nodes]
    return mpmath.lu_solve(mpmath.matrix(rows), mpmath.matrix(rhs))


MAX_REL_ERR = 1e-13


def check(samples: int):
    worst_gamma = 0.0
    worst_log = 0.0
    with mpmath.workdps(40):
        for x in np.linspace(1e-3, 10.0, samples):
            x = float(x)
            exact = mpmath.gamma(x)
            worst_gamma = max(worst_gamma, float(abs(gamma_kernel.gamma(x) / exact - 1)))
            log_exact = mpmath.loggamma(x)
            if abs(log_exact) > 1e-3:
                worst_log = max(worst_log, float(abs(gamma_kernel.log_gamma(x) / log_exact - 1)))
    print(f"gamma:     max relative error {worst_gamma:.3e} over {samples} points in (0, 10]")
    print(f"log_gamma: max relative error {worst_log:.3e} (points with |log gamma| > 1e-3)")
    return worst_gamma


def main(argv=None):
    parser = argparse.ArgumentParser(description="Check or regenerate Lanczos coefficients")
    parser.add_argument("--fit", action="store_true", help="Interpolate and print a fresh numerator")
    parser.add_argument("--dps", type=int, default=50, help="mpmath working precision for --fit")
    parser.add_argument("--samples", type=int, default=2000, help="Grid size for the accuracy check")
    args = parser.parse_args(argv)

    if args.fit:
        coeffs = fit_numerator(args.dps)
        print("LANCZOS_NUM = np.array([")
        for c in coeffs:
            print(f"    {mpmath.nstr(c, 40)},")
        print("])")
        return 0

    worst = check(args.samples)
    return 0 if worst <= MAX_REL_ERR else 1


if __name__ == "__main__":
    sys.exit(main())
