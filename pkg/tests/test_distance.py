"""
Tests for src/distance.py

Tests the axis potential, the closed-form axis distance, the half-plane
distance and geodesic distances between arbitrary points.
"""

import math
import pytest
import sys
from pathlib import Path

from hypothesis import assume, given, settings, strategies as st
from scipy import integrate

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.conemetric import rho_at
from src.distance import (
    axis_distance,
    geodesic_distance,
    half_plane_distance,
    phi,
    radial_lower_bound,
)
from src.errors import DivergenceError, DomainError, SingularPointError
from src.models import SignatureParam
from src.oracle import quad_axis_distance

upper_points = st.builds(
    complex,
    st.floats(min_value=-3.0, max_value=4.0),
    st.floats(min_value=0.05, max_value=3.0),
)


# ============================================================================
# AXIS POTENTIAL
# ============================================================================

class TestPhi:
    """Tests for phi() and axis_distance()."""

    def test_value_at_infinity(self, sig_quarter):
        """Test Phi_a(inf) = -1/2 log cos(pi a) for a = 1/4."""
        assert phi(sig_quarter, math.inf) == pytest.approx(0.1732867951, rel=1e-9)

    def test_complement_at_infinity(self):
        """Test that a and 1 - a share Phi_a(inf) = -1/2 log|cos(pi a)|."""
        assert phi(SignatureParam(0.75), math.inf) == pytest.approx(phi(SignatureParam(0.25), math.inf), rel=1e-14)

    def test_infinity_is_limit(self, sig_quarter):
        """Test that Phi_a(x) approaches its value at infinity."""
        assert phi(sig_quarter, 1e12) == pytest.approx(phi(sig_quarter, math.inf), abs=1e-4)

    def test_cusp_diverges(self, sig_half):
        """Test that Phi_{1/2}(inf) is a divergence error."""
        with pytest.raises(DivergenceError):
            phi(sig_half, math.inf)

    @pytest.mark.parametrize("x", [0.0, -1.0, float("nan")])
    def test_domain(self, sig_quarter, x):
        """Test that x must be positive."""
        with pytest.raises(DomainError):
            phi(sig_quarter, x)

    def test_increasing(self, cone_sig):
        """Test that Phi_a increases along the negative axis."""
        values = [phi(cone_sig, x) for x in (0.01, 0.1, 1.0, 10.0, 100.0)]
        assert all(b > a for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("x,y", [(0.5, 4.0), (1.0, 10.0), (0.1, 0.5), (2.0, 3.0), (0.05, 20.0)])
    def test_axis_distance_matches_quadrature(self, cone_sig, x, y):
        """Test Phi_a(y) - Phi_a(x) = integral of rho(-t) over [x, y]."""
        assert axis_distance(cone_sig, x, y) == pytest.approx(quad_axis_distance(cone_sig, x, y), abs=1e-9)

    def test_axis_distance_order(self, sig_quarter):
        """Test zero length and the ordering precondition."""
        assert axis_distance(sig_quarter, 2.0, 2.0) == 0.0
        with pytest.raises(DomainError):
            axis_distance(sig_quarter, 3.0, 2.0)


# ============================================================================
# HALF-PLANE DISTANCE
# ============================================================================

class TestHalfPlaneDistance:
    """Tests for half_plane_distance()."""

    def test_vertical_pair(self):
        """Test d(i, 2i) = 1/2 log 2 for the metric |dw| / (2 Im w)."""
        assert half_plane_distance(1j, 2j) == pytest.approx(0.5 * math.log(2), rel=1e-15)

    def test_same_point(self):
        """Test d(w, w) = 0."""
        assert half_plane_distance(complex(0.3, 0.4), complex(0.3, 0.4)) == 0.0

    def test_far_apart_points_keep_precision(self):
        """Test a pair whose ratio r is within 1e-20 of 1."""
        d = half_plane_distance(complex(0, 1e-10), complex(0, 1e10))
        assert d == pytest.approx(0.5 * math.log(1e20), rel=1e-14)

    def test_symmetric(self):
        """Test d(w1, w2) = d(w2, w1)."""
        w1, w2 = complex(-1.0, 0.2), complex(3.0, 1.5)
        assert half_plane_distance(w1, w2) == pytest.approx(half_plane_distance(w2, w1), rel=1e-15)


# ============================================================================
# GEODESIC DISTANCE
# ============================================================================

class TestGeodesicDistance:
    """Tests for geodesic_distance() and radial_lower_bound()."""

    def test_zero_for_same_point(self, sig_quarter):
        """Test d(z, z) = 0."""
        assert geodesic_distance(sig_quarter, complex(0.3, 0.4), complex(0.3, 0.4)) == 0.0

    @pytest.mark.parametrize("z", [0, 1])
    def test_punctures_rejected(self, sig_quarter, z):
        """Test that the punctures are singular points."""
        with pytest.raises(SingularPointError):
            geodesic_distance(sig_quarter, z, complex(0.5, 0.5))

    def test_unit_interval_is_geodesic(self, cone_sig):
        """Test that d(x1, x2) on (0, 1) equals the integral of rho along the segment."""
        x1, x2 = 0.2, 0.7
        integral, _ = integrate.quad(lambda t: rho_at(cone_sig, t), x1, x2, epsabs=1e-12, epsrel=1e-12)
        assert geodesic_distance(cone_sig, x1, x2) == pytest.approx(integral, abs=1e-9)

    def test_negative_axis_matches_phi(self, sig):
        """Test d(-x, -y) = Phi_a(y) - Phi_a(x)."""
        assert geodesic_distance(sig, -0.5, -6.0) == pytest.approx(axis_distance(sig, 0.5, 6.0), abs=1e-10)

    def test_conjugation_invariance(self, sig_quarter):
        """Test d(conj z1, conj z2) = d(z1, z2)."""
        z1, z2 = complex(0.2, 0.7), complex(-1.5, 2.0)
        assert geodesic_distance(sig_quarter, z1.conjugate(), z2.conjugate()) == pytest.approx(
            geodesic_distance(sig_quarter, z1, z2), rel=1e-12)

    def test_reflection_invariance(self, sig_quarter):
        """Test d(1 - z1, 1 - z2) = d(z1, z2)."""
        z1, z2 = complex(0.2, 0.7), complex(-1.5, 2.0)
        assert geodesic_distance(sig_quarter, 1 - z1, 1 - z2) == pytest.approx(
            geodesic_distance(sig_quarter, z1, z2), rel=1e-10)

    def test_mixed_pair_near_axis(self, sig_half):
        """Test that a short crossing of (0, 1) costs about rho times its length."""
        z = complex(0.5, 1e-3)
        d = geodesic_distance(sig_half, z, z.conjugate())
        assert d == pytest.approx(2e-3 * rho_at(sig_half, 0.5), rel=1e-2)

    def test_mixed_pair_bounded_by_axis_paths(self, sig_quarter):
        """Test that the crossing search beats any fixed crossing point."""
        upper = complex(-1.0, 0.8)
        lower = complex(2.0, -0.5)
        d = geodesic_distance(sig_quarter, upper, lower)
        for t in (-2.0, -0.5, 0.5, 1.5, 3.0):
            via_t = geodesic_distance(sig_quarter, upper, t) + geodesic_distance(sig_quarter, t, lower)
            assert d <= via_t + 1e-9

    def test_mixed_pair_symmetric(self, sig_quarter):
        """Test d(z1, z2) = d(z2, z1) across the axis."""
        z1, z2 = complex(0.3, 0.6), complex(-2.0, -1.0)
        assert geodesic_distance(sig_quarter, z1, z2) == pytest.approx(
            geodesic_distance(sig_quarter, z2, z1), rel=1e-9)

    @settings(max_examples=25, deadline=None)
    @given(upper_points, upper_points, upper_points)
    def test_triangle_inequality(self, z1, z2, z3):
        """Test d(z1, z3) <= d(z1, z2) + d(z2, z3) in the upper half plane."""
        s = SignatureParam.from_alpha(0.5)
        d13 = geodesic_distance(s, z1, z3)
        assert d13 <= geodesic_distance(s, z1, z2) + geodesic_distance(s, z2, z3) + 1e-9

    @settings(max_examples=25, deadline=None)
    @given(upper_points, upper_points)
    def test_radial_lower_bound(self, z1, z2):
        """Test d(-|z1|, -|z2|) <= d(z1, z2)."""
        assume(abs(z1) != abs(z2))
        if abs(z1) > abs(z2):
            z1, z2 = z2, z1
        s = SignatureParam(0.3)
        assert radial_lower_bound(s, z1, z2) <= geodesic_distance(s, z1, z2) + 1e-10

    def test_radial_bound_order(self, sig_quarter):
        """Test that |z1| > |z2| is rejected."""
        with pytest.raises(DomainError):
            radial_lower_bound(sig_quarter, 3.0, 0.5)
