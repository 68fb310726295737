"""
Tests for src/hypergeom.py

Tests the direct series, the logarithmic connection, the cut formula, the
region dispatcher and the product identity against closed forms and mpmath.
"""

import cmath
import math
import pytest
import sys
from pathlib import Path

import mpmath

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import CutSideMissingError, DivergenceError, DomainError, ParameterError
from src.hypergeom import (
    _continuation,
    cut_constant,
    hyp2f1,
    hyp2f1_cut,
    hyp2f1_log_connection,
    hyp2f1_series,
    new_identity_residual,
)
from src import gamma_kernel
from src.models import CutPoint, HypParams, Method, Side

K_HALF_OVER_HALF_PI = 1.1803405990160962  # F(1/2, 1/2; 1; 1/2)


def reference(p, z, dps=30):
    """mpmath value of F(a, b; c; z) at a point off the cut."""
    with mpmath.workdps(dps):
        return complex(mpmath.hyp2f1(p.a, p.b, p.c, z))


def side_reference(p, x, side, dps=40):
    """mpmath side limit on the cut, from a point 1e-30 off the axis."""
    eps = 1e-30 if side is Side.PLUS else -1e-30
    with mpmath.workdps(dps):
        return complex(mpmath.hyp2f1(p.a, p.b, p.c, mpmath.mpc(x, eps)))


def rel(value, expected):
    return abs(value - expected) / abs(expected)


# ============================================================================
# DIRECT SERIES
# ============================================================================

class TestSeries:
    """Tests for hyp2f1_series()."""

    def test_origin(self):
        """Test F(a, b; c; 0) = 1."""
        result = hyp2f1_series(HypParams(0.3, 0.7, 1.5), 0)
        assert result.value == 1.0
        assert result.method is Method.DIRECT_SERIES

    def test_complete_elliptic_half(self):
        """Test F(1/2, 1/2; 1; 1/2) = (2/pi) K(1/2)."""
        result = hyp2f1_series(HypParams(0.5, 0.5, 1.0), 0.5)
        assert result.value.real == pytest.approx(K_HALF_OVER_HALF_PI, rel=1e-14)
        assert result.value.imag == 0.0

    def test_logarithm_closed_form(self):
        """Test F(1, 1; 2; z) = -log(1-z)/z at z = 1/2."""
        result = hyp2f1_series(HypParams(1.0, 1.0, 2.0), 0.5)
        assert result.value.real == pytest.approx(2 * math.log(2), rel=1e-14)
        assert result.terms_used > 10
        assert result.est_rel_err < 1e-12

    def test_complex_point(self):
        """Test a complex point inside the disk against mpmath."""
        p = HypParams(0.25, 0.75, 1.0)
        z = complex(0.3, -0.6)
        assert rel(hyp2f1_series(p, z).value, reference(p, z)) <= 1e-13

    @pytest.mark.parametrize("z", [1.0, complex(0, 1), -1.5])
    def test_outside_disk_rejected(self, z):
        """Test that |z| >= 1 is a domain error."""
        with pytest.raises(DomainError):
            hyp2f1_series(HypParams(0.5, 0.5, 1.0), z)


# ============================================================================
# DISPATCHER
# ============================================================================

class TestDispatcher:
    """Tests for hyp2f1() region selection and accuracy."""

    @pytest.mark.parametrize("z,method", [
        (0.3, Method.DIRECT_SERIES),
        (complex(-0.2, 0.5), Method.DIRECT_SERIES),
        (0.9, Method.LOG_CONNECTION),
        (complex(0.8, 0.3), Method.LOG_CONNECTION),
        (-2.0, Method.PFAFF),
        (cmath.exp(1j * math.pi / 3), Method.TAYLOR_CONTINUATION),
        (complex(-5.0, 3.0), Method.TAYLOR_CONTINUATION),
    ])
    def test_region_methods(self, z, method):
        """Test which branch of the region strategy fires."""
        assert hyp2f1(HypParams(0.25, 0.75, 1.0), z).method is method

    @pytest.mark.parametrize("params", [
        (0.25, 0.75, 1.0),
        (-0.75, 0.75, 1.0),
        (0.3, 0.3, 1.0),
        (0.3, 0.3, 0.6),
        (0.7, 0.7, 1.4),
    ])
    @pytest.mark.parametrize("z", [
        complex(0.5, 0.1),
        0.95,
        -3.0,
        complex(-5.0, 3.0),
        cmath.exp(1j * math.pi / 3),
        cmath.exp(-1j * math.pi / 3),
        complex(1.5, 0.2),
        complex(0.2, -4.0),
        -250.0,
    ])
    def test_against_mpmath(self, params, z):
        """Test every region for the families used by the metric."""
        p = HypParams(*params)
        assert rel(hyp2f1(p, z).value, reference(p, z)) <= 1e-11

    def test_negative_axis_transformation(self):
        """Test F(1/4, 3/4; 1; -3) = 4^(-1/4) F(1/4, 1/4; 1; 3/4)."""
        lhs = hyp2f1(HypParams(0.25, 0.75, 1.0), -3.0).value.real
        rhs = 4 ** -0.25 * hyp2f1(HypParams(0.25, 0.25, 1.0), 0.75).value.real
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_real_below_one_is_real(self):
        """Test that real z < 1 gives a real value."""
        for z in (-40.0, -1.0, 0.2, 0.99):
            assert hyp2f1(HypParams(0.25, 0.75, 1.0), z).value.imag == 0.0

    def test_parameter_symmetry(self):
        """Test F(a, b; c; z) = F(b, a; c; z)."""
        for z in (0.4, complex(0.9, 0.05), complex(-3.0, 1.0), cmath.exp(1j * math.pi / 3)):
            assert hyp2f1(HypParams(0.25, 0.75, 1.0), z).value == hyp2f1(HypParams(0.75, 0.25, 1.0), z).value

    @pytest.mark.parametrize("z", [
        complex(0.3, 0.2),
        complex(0.9, 0.1),
        complex(-2.0, 0.5),
        complex(0.5, 2.0),
        complex(3.0, 0.01),
    ])
    def test_schwarz_reflection(self, z):
        """Test F(conj z) = conj F(z) for real parameters."""
        p = HypParams(0.3, 0.7, 1.0)
        upper = hyp2f1(p, z).value
        lower = hyp2f1(p, z.conjugate()).value
        assert abs(lower - upper.conjugate()) <= 1e-13 * abs(upper)

    def test_series_and_log_connection_agree(self):
        """Test the overlap of the series and the expansion about 1."""
        p = HypParams(0.25, 0.75, 1.0)
        for z in (0.6, complex(0.55, 0.3), complex(0.7, -0.1)):
            series = hyp2f1_series(p, z).value
            connection = hyp2f1_log_connection(0.25, 0.75, z).value
            assert rel(connection, series) <= 1e-11

    def test_continuation_and_pfaff_agree(self):
        """Test that the Taylor continuation matches the Pfaff transform where both apply."""
        z = complex(-1.0, 0.2)
        w = z / (z - 1)
        pfaff = (1 - z) ** -0.3 * hyp2f1_series(HypParams(0.3, 0.3, 1.0), w).value
        continued, _, _ = _continuation(0.3, 0.7, 1.0, z, 1.0)
        assert hyp2f1(HypParams(0.3, 0.7, 1.0), z).method is Method.PFAFF
        assert rel(continued, pfaff) <= 1e-11

    def test_bare_point_on_cut_needs_side(self):
        """Test that a bare real z > 1 is rejected."""
        with pytest.raises(CutSideMissingError):
            hyp2f1(HypParams(0.5, 0.5, 1.0), 2.0)

    def test_gauss_value_at_one(self):
        """Test F(-1/2, 1/2; 1; 1) = 2/pi."""
        result = hyp2f1(HypParams(-0.5, 0.5, 1.0), 1.0)
        assert result.method is Method.GAUSS_VALUE
        assert result.value.real == pytest.approx(2 / math.pi, rel=1e-13)

    def test_divergence_at_one(self):
        """Test that F(a, 1-a; 1; 1) is a divergence error."""
        with pytest.raises(DivergenceError):
            hyp2f1(HypParams(0.25, 0.75, 1.0), 1.0)

    def test_non_elliptic_family_on_cut(self):
        """Test side limits of F(a, a; 2a; x) on the cut against mpmath."""
        p = HypParams(0.3, 0.3, 0.6)
        for x in (1.4, 3.0):
            for side in (Side.PLUS, Side.MINUS):
                value = hyp2f1(p, CutPoint(x, side)).value
                assert rel(value, side_reference(p, x, side)) <= 1e-10


# ============================================================================
# LOGARITHMIC CONNECTION
# ============================================================================

class TestLogConnection:
    """Tests for hyp2f1_log_connection()."""

    def test_matches_series_at_half(self):
        """Test F(1/2, 1/2; 1; 1/2) from the expansion about 1."""
        result = hyp2f1_log_connection(0.5, 0.5, 0.5)
        assert result.method is Method.LOG_CONNECTION
        assert result.value.real == pytest.approx(K_HALF_OVER_HALF_PI, rel=1e-12)

    def test_log_law_slope(self):
        """Test the growth (sin(pi a)/pi) log(1/(1-z)) per decade for a = 1/4."""
        slope = math.sin(math.pi / 4) / math.pi * math.log(10)
        near = hyp2f1_log_connection(0.25, 0.75, 0.999).value.real
        nearer = hyp2f1_log_connection(0.25, 0.75, 0.9999).value.real
        assert nearer - near == pytest.approx(slope, abs=1e-3)

    def test_log_law_normalized(self):
        """Test value * pi / (sin(pi a) log(1/(1-z))) tends to 1."""
        a = 0.25
        ratios = []
        for k in (4, 8, 12):
            z = 1 - 10.0 ** -k
            value = hyp2f1(HypParams(a, 1 - a, 1.0), z).value.real
            ratios.append(value * math.pi / (math.sin(math.pi * a) * math.log(10.0 ** k)))
        assert abs(ratios[2] - 1) < abs(ratios[1] - 1) < abs(ratios[0] - 1)

    def test_classical_k_near_one(self):
        """Test F(1/2, 1/2; 1; 1 - 1e-8) = (log(1e8) + 4 log 2)/pi to leading order."""
        value = hyp2f1_log_connection(0.5, 0.5, 1 - 1e-8).value.real
        expected = (math.log(1e8) + 4 * math.log(2)) / math.pi
        assert value == pytest.approx(expected, rel=1e-6)

    def test_integer_excess(self):
        """Test c = a + b + m with m > 0 against mpmath."""
        for a, b, m in ((-0.5, 0.5, 1), (0.3, 0.3, 2), (-0.25, 0.25, 1)):
            p = HypParams(a, b, a + b + m)
            for z in (0.6, complex(0.9, -0.3)):
                assert rel(hyp2f1_log_connection(a, b, z, m=m).value, reference(p, z)) <= 1e-11

    def test_side_on_cut(self):
        """Test both side limits past z = 1 against mpmath."""
        p = HypParams(0.25, 0.75, 1.0)
        for side in (Side.PLUS, Side.MINUS):
            value = hyp2f1_log_connection(0.25, 0.75, 1.3, side=side).value
            assert rel(value, side_reference(p, 1.3, side)) <= 1e-11

    def test_errors(self):
        """Test the precondition errors."""
        with pytest.raises(DivergenceError):
            hyp2f1_log_connection(0.5, 0.5, 1.0)
        with pytest.raises(DomainError):
            hyp2f1_log_connection(0.5, 0.5, -0.5)
        with pytest.raises(ParameterError):
            hyp2f1_log_connection(0.5, 0.5, 0.5, m=-1)
        with pytest.raises(CutSideMissingError):
            hyp2f1_log_connection(0.5, 0.5, 1.2)


# ============================================================================
# CUT FORMULA
# ============================================================================

class TestCutFormula:
    """Tests for hyp2f1_cut()."""

    def test_half_at_two(self):
        """Test F+(1/2, 1/2; 1; 2) = 2^(-1/2) (1 + i) F(1/2, 1/2; 1; 1/2)."""
        result = hyp2f1_cut(HypParams(0.5, 0.5, 1.0), 1.0, Side.PLUS)
        expected = K_HALF_OVER_HALF_PI / math.sqrt(2)
        assert result.method is Method.CUT_FORMULA
        assert result.value.real == pytest.approx(expected, rel=1e-12)
        assert result.value.imag == pytest.approx(expected, rel=1e-12)

    def test_conjugate_sides(self):
        """Test F-(1+x) = conj F+(1+x)."""
        p = HypParams(0.25, 0.75, 1.0)
        plus = hyp2f1_cut(p, 2.0, Side.PLUS).value
        minus = hyp2f1_cut(p, 2.0, Side.MINUS).value
        assert abs(minus - plus.conjugate()) <= 1e-14 * abs(plus)

    @pytest.mark.parametrize("a", [0.1, 0.25, 0.6, 0.9])
    @pytest.mark.parametrize("x", [0.05, 1.0, 7.0, 300.0])
    def test_against_mpmath(self, a, x):
        """Test the plus side limit over a range of x."""
        p = HypParams(a, 1 - a, 1.0)
        value = hyp2f1_cut(p, x, Side.PLUS).value
        assert rel(value, side_reference(p, 1 + x, Side.PLUS)) <= 1e-10

    def test_agrees_with_dispatcher(self):
        """Test that a tagged CutPoint routes to the same value."""
        p = HypParams(0.25, 0.75, 1.0)
        direct = hyp2f1_cut(p, 0.3, Side.MINUS).value
        routed = hyp2f1(p, CutPoint(1.3, Side.MINUS)).value
        connection = hyp2f1_log_connection(0.25, 0.75, 1.3, side=Side.MINUS).value
        assert rel(routed, direct) <= 1e-14
        assert rel(connection, direct) <= 1e-11

    def test_large_x_asymptotic(self):
        """Test Re F+(1+x) ~ C_a x^(-a) / 2 at x = 1e6."""
        a = 0.25
        value = hyp2f1_cut(HypParams(a, 1 - a, 1.0), 1e6, Side.PLUS).value.real
        expected = 0.5 * cut_constant(a) * 1e6 ** -a
        assert value == pytest.approx(expected, rel=0.01)

    def test_connection_constant_identity(self):
        """Test C_a gamma(1-a)^2 / gamma(1-2a) = 2 cos(pi a)."""
        for a in (0.1, 0.25, 0.4):
            lhs = cut_constant(a) * gamma_kernel.gamma(1 - a) ** 2 / gamma_kernel.gamma(1 - 2 * a)
            assert lhs == pytest.approx(2 * math.cos(math.pi * a), rel=1e-12)

    def test_errors(self):
        """Test parameter, side and domain errors."""
        p = HypParams(0.25, 0.75, 1.0)
        with pytest.raises(ParameterError):
            hyp2f1_cut(HypParams(0.25, 0.25, 1.0), 1.0, Side.PLUS)
        with pytest.raises(CutSideMissingError):
            hyp2f1_cut(p, 1.0, Side.INTERIOR)
        with pytest.raises(DomainError):
            hyp2f1_cut(p, 0.0, Side.PLUS)
        with pytest.raises(DomainError):
            hyp2f1_cut(p, -1.0, Side.MINUS)


# ============================================================================
# PRODUCT IDENTITY
# ============================================================================

class TestNewIdentity:
    """Tests for new_identity_residual()."""

    @pytest.mark.parametrize("a,x,tol", [
        (0.5, 0.3, 1e-11),
        (0.25, 0.5, 1e-11),
        (0.9, 0.05, 1e-10),
        (0.1, 0.95, 1e-10),
        (0.7, 0.6, 1e-11),
    ])
    def test_residual_vanishes(self, a, x, tol):
        """Test that the identity holds across (0, 1) x (0, 1)."""
        assert new_identity_residual(a, x) <= tol

    def test_detects_wrong_constant(self, monkeypatch):
        """Test that a perturbed connection constant breaks the identity."""
        import src.hypergeom as hypergeom
        original = hypergeom.cut_constant
        monkeypatch.setattr(hypergeom, "cut_constant", lambda a: 1.001 * original(a))
        assert new_identity_residual(0.25, 0.5) > 1e-5

    @pytest.mark.parametrize("a,x", [(0.0, 0.5), (1.0, 0.5), (0.5, 0.0), (0.5, 1.0)])
    def test_domain(self, a, x):
        """Test that a and x must lie in (0, 1)."""
        with pytest.raises(DomainError):
            new_identity_residual(a, x)
