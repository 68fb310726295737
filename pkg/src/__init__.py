"""
Cone Metric Modules Package

Special functions and the hyperbolic metric of the twice-punctured sphere
with a conical singularity at infinity.

Modules:
- gamma_kernel: Real-argument gamma, log-gamma, digamma and beta
- hypergeom: Gauss hypergeometric function on the cut plane
- elliptic: Generalized complete elliptic integrals K_a, E_a
- conemetric: Metric density, triangle map, asymptotics, monotonicity scans
- distance: Axis potential Phi_a and geodesic distances
- oracle: Independent quadrature oracles
- grid: Grid evaluation and CSV/JSON export
- verify: Self-checks used by the verify subcommand
"""

__version__ = "1.0.0"

__all__ = [
    "gamma_kernel",
    "hypergeom",
    "elliptic",
    "conemetric",
    "distance",
    "oracle",
    "grid",
    "verify",
]
