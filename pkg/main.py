#!/usr/bin/env python3
"""
Cone Metric Toolkit - CLI Entry Point

Evaluates the hyperbolic metric of the twice-punctured sphere with a cone
point of angle 2*pi*alpha at infinity: point densities, geodesic distances,
grid export, self-checks and asymptotic constants.

The signature parameter used internally is a = (1 - alpha)/2.

Exit codes: 0 ok, 1 verification failure, 2 domain error, 3 I/O error.
"""

import argparse
import logging
import math
import os
import sys

# Add current directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.config import (
    load_config,
    setup_logging,
    log_and_status,
    SCRIPT_VERSION
)
from src.conemetric import asymptotic_constants, rho_half, rho_with_diagnostics
from src.distance import geodesic_distance, phi, radial_lower_bound
from src.elliptic import K_a_half_closed_form
from src.errors import ConeMetricError, DivergenceError, DomainError, ParameterError
from src.grid import GRID_FORMATS, GridSpec, evaluate_grid, write_grid
from src.models import SignatureParam
from src.utils import format_complex, format_number, parse_complex
from src.verify import VERIFY_LEVELS, format_report, run_checks

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_DOMAIN_ERROR = 2
EXIT_IO_ERROR = 3

POINT_FLAGS = ("--z", "--z1", "--z2")


def print_status(message):
    """Print status message to stderr, keeping stdout for results."""
    print(f"[STATUS] {message}", file=sys.stderr)


def print_error(message):
    print(f"ERROR: {message}", file=sys.stderr)


def _complex_arg(text):
    try:
        return parse_complex(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _alpha_arg(text):
    alpha = float(text)
    if not (0.0 <= alpha < 1.0):
        raise argparse.ArgumentTypeError(f"alpha must lie in [0, 1), got {text}")
    return alpha


def normalize_point_args(argv):
    """
    Join point flags with negative values ("--z1 -1,0" -> "--z1=-1,0").

    argparse otherwise reads "-1,0" as an option because of the comma.
    """
    out = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in POINT_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def build_parser():
    parser = argparse.ArgumentParser(
        description="Hyperbolic metric of the twice-punctured sphere with a conical singularity at infinity",
        epilog=f"Version {SCRIPT_VERSION}"
    )
    parser.add_argument("--log-file", help="Path to log file")
    parser.add_argument("--verbose", action="store_true", help="Verbose output")
    parser.add_argument("--digits", type=int, choices=range(1, 18), metavar="{1..17}",
                        help="Significant digits in numeric output (default from config, 15)")
    sub = parser.add_subparsers(dest="command", required=True)

    density = sub.add_parser("density", help="Density rho_alpha(z) at one point")
    density.add_argument("--alpha", type=_alpha_arg, required=True, help="Cone angle parameter in [0, 1)")
    density.add_argument("--z", type=_complex_arg, required=True, help="Point as re,im")

    distance = sub.add_parser("distance", help="Geodesic distance and the radial lower bound")
    distance.add_argument("--alpha", type=_alpha_arg, required=True, help="Cone angle parameter in [0, 1)")
    distance.add_argument("--z1", type=_complex_arg, required=True, help="First point as re,im")
    distance.add_argument("--z2", type=_complex_arg, required=True, help="Second point as re,im")

    grid = sub.add_parser("grid", help="Evaluate rho on a rectangular grid and export it")
    grid.add_argument("--alpha", type=_alpha_arg, required=True, help="Cone angle parameter in [0, 1)")
    grid.add_argument("--re", nargs=2, type=float, required=True, metavar=("MIN", "MAX"), help="Real range")
    grid.add_argument("--im", nargs=2, type=float, required=True, metavar=("MIN", "MAX"), help="Imaginary range")
    grid.add_argument("--nx", type=int, required=True, help="Nodes along the real axis (>= 2)")
    grid.add_argument("--ny", type=int, required=True, help="Nodes along the imaginary axis (>= 2)")
    grid.add_argument("--format", choices=GRID_FORMATS, help="Output format (default from config, csv)")
    grid.add_argument("--out", required=True, help="Output file path")
    grid.add_argument("--workers", type=int, help="Worker processes (default from config, 1)")

    verify = sub.add_parser("verify", help="Run identity and oracle self-checks")
    verify.add_argument("level", nargs="?", choices=VERIFY_LEVELS, help="quick (default) or full")
    verify.add_argument("--seed", type=int, help="Seed for random sample points")

    constants = sub.add_parser("constants", help="Asymptotic constants and closed-form values")
    constants.add_argument("--alpha", type=_alpha_arg, required=True, help="Cone angle parameter in [0, 1)")

    return parser


def _print_fields(fields):
    width = max(len(name) for name, _ in fields)
    for name, value in fields:
        print(f"{name:<{width}}  {value}")


def cmd_density(args, config):
    digits = config["OUTPUT_DIGITS"]
    s = SignatureParam.from_alpha(args.alpha)
    value, method, err = rho_with_diagnostics(s, args.z)
    _print_fields([
        ("alpha", format_number(args.alpha, digits)),
        ("z", format_complex(args.z, digits)),
        ("rho", format_number(value, digits)),
        ("method", method),
        ("est_rel_err", format_number(err, 3)),
    ])
    return EXIT_OK


def cmd_distance(args, config):
    digits = config["OUTPUT_DIGITS"]
    s = SignatureParam.from_alpha(args.alpha)
    d = geodesic_distance(s, args.z1, args.z2)
    near, far = (args.z1, args.z2) if abs(args.z1) <= abs(args.z2) else (args.z2, args.z1)
    bound = radial_lower_bound(s, near, far)
    _print_fields([
        ("alpha", format_number(args.alpha, digits)),
        ("z1", format_complex(args.z1, digits)),
        ("z2", format_complex(args.z2, digits)),
        ("distance", format_number(d, digits)),
        ("radial_lower_bound", format_number(bound, digits)),
    ])
    return EXIT_OK


def cmd_grid(args, config):
    spec = GridSpec(args.re[0], args.re[1], args.im[0], args.im[1], args.nx, args.ny, args.alpha)
    fmt = args.format or config["GRID_FORMAT"]
    workers = args.workers or config["GRID_WORKERS"]
    records = evaluate_grid(spec, workers=workers, status_fn=print_status)
    try:
        write_grid(records, args.out, fmt, config["OUTPUT_DIGITS"])
    except OSError as e:
        print_error(f"Failed to write grid file: {e}")
        return EXIT_IO_ERROR
    print_status(f"✓ Wrote {len(records)} records to {args.out}")
    return EXIT_OK


def cmd_verify(args, config):
    level = args.level or config["VERIFY_LEVEL"]
    seed = args.seed if args.seed is not None else config["VERIFY_SEED"]
    results = run_checks(level, seed=seed, status_fn=print_status)
    print(format_report(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY_FAILED


def cmd_constants(args, config):
    digits = config["OUTPUT_DIGITS"]
    s = SignatureParam.from_alpha(args.alpha)
    constants = asymptotic_constants(s)
    fields = [
        ("alpha", format_number(args.alpha, digits)),
        ("a", format_number(s.a, digits)),
        ("c0", format_number(constants.c0, digits)),
        ("c1", format_number(constants.c1, digits)),
    ]
    if constants.cusp_at_infinity:
        fields.append(("infinity", "cusp (log rho = -log|z| - log log|z| - log 2 + o(1))"))
    else:
        fields.append(("c_inf", format_number(constants.c_inf, digits)))
    fields.extend([
        ("exponent_inf", format_number(constants.exponent_inf, digits)),
        ("rho_half", format_number(rho_half(s), digits)),
        ("K_a_half", format_number(K_a_half_closed_form(s), digits)),
        ("Phi_inf", "inf" if constants.cusp_at_infinity else format_number(phi(s, math.inf), digits)),
    ])
    _print_fields(fields)
    return EXIT_OK


COMMANDS = {
    "density": cmd_density,
    "distance": cmd_distance,
    "grid": cmd_grid,
    "verify": cmd_verify,
    "constants": cmd_constants,
}


def main(argv=None):
    """CLI entry point."""
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(normalize_point_args(argv))

    # Load config (defaults if missing or invalid), then override with CLI args
    config = load_config()

    if args.digits:
        config["OUTPUT_DIGITS"] = args.digits
    if args.verbose:
        config["VERBOSE"] = True

    log_file = args.log_file or config.get("LOG_FILE", "")
    setup_logging(log_file, logging.DEBUG if config.get("VERBOSE") else logging.WARNING)
    log_and_status(None, f"{SCRIPT_VERSION}: {args.command}")

    try:
        return COMMANDS[args.command](args, config)
    except (DomainError, ParameterError, DivergenceError) as e:
        print_error(str(e))
        return EXIT_DOMAIN_ERROR
    except ConeMetricError as e:
        print_error(f"Numerical failure: {e}")
        return EXIT_VERIFY_FAILED
    except OSError as e:
        print_error(f"I/O failure: {e}")
        return EXIT_IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
