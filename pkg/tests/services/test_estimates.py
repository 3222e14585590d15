"""Tests for the sharp constants, bounds and extremal data."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from HypHarm.errors import DomainError, MethodMismatch
from HypHarm.models.boundary import BoundaryFunction
from HypHarm.models.geometry import BallPoint, UnitVector
from HypHarm.models.params import ExponentPair, HypergeomParams, QuadratureSpec
from HypHarm.services.estimates import (
    bound_report,
    cap_lower_bound,
    cq_closed_form,
    cq_integral,
    cq_integral_estimate,
    cq_n3_closed_form,
    cq_params,
    cq_polynomial_coefficients,
    cq_radial_derivative,
    cq_sup,
    extremal_boundary,
    indicator_cap,
    kernel_power_closed_form,
    kernel_power_integral,
    l1_bound,
    l1_extremal_sequence,
    lp_norm,
    lp_norm_estimate,
    monotonicity_case,
    pointwise_bound,
    pointwise_bound_n3,
    uniform_bound,
    verify_sharpness,
)
from HypHarm.services.hypergeom import gauss_2f1_series
from HypHarm.services.kernel import kernel_maximum
from HypHarm.services.sphere import random_rotation
from HypHarm.services.verification import random_boundary_function

ZONAL = QuadratureSpec.zonal(200)

P_VALUES = st.floats(min_value=1.1, max_value=10.0)
Q_VALUES = st.floats(min_value=1.05, max_value=6.0)
RADII = st.floats(min_value=0.0, max_value=0.99)


@pytest.fixture
def half_point():
    """x = 0.5 e_3."""
    return BallPoint.from_radius(0.5, 3)


class TestConstant:
    """Test cases for C_q(x) and C_q."""

    def test_params(self):
        """Test the 2F1 parameters of C_2 in dimension 3."""
        assert cq_params(2.0, 3) == HypergeomParams(-2.0, -2.5, 1.5)

    def test_params_snap(self):
        """Test that (n-1)(q-1) is snapped to an integer."""
        params = cq_params(1.1, 11)
        assert params.a == -1.0
        assert params.terminating

    def test_anchors(self, half_point):
        """Test C_2(0.5 e_3) = 91/48 and C_2 = 16/3 in dimension 3."""
        assert cq_closed_form(2.0, half_point) == pytest.approx(91.0 / 48.0, abs=1e-12)
        assert cq_sup(2.0, 3) == pytest.approx(16.0 / 3.0, abs=1e-12)

    def test_origin_and_q_one(self, half_point):
        """Test C_q(0) = 1 and C_1(x) = 1."""
        assert cq_closed_form(3.0, BallPoint.origin(4)) == 1.0
        assert cq_closed_form(1.0, half_point) == 1.0
        assert cq_sup(1.0, 5) == 1.0

    def test_sup_matches_series_at_one(self):
        """Test Gauss's summation against the convergent series at 1."""
        assert cq_sup(1.5, 4) == pytest.approx(
            gauss_2f1_series(cq_params(1.5, 4), 1.0), rel=1e-10
        )

    @pytest.mark.parametrize("n", [3, 4, 5])
    @pytest.mark.parametrize("q", [1.1, 1.5, 2.0, 3.0, 7.0])
    @pytest.mark.parametrize("radius", [0.0, 0.5, 0.95])
    def test_integral_matches_closed_form(self, n, q, radius):
        """Test quadrature of |x - eta|^{2(n-1)(q-1)} against the 2F1 form."""
        x = BallPoint.from_radius(radius, n)
        exact = cq_closed_form(q, x)
        numeric = cq_integral(q, x, QuadratureSpec.zonal(400))
        assert abs(numeric - exact) / (1.0 + exact) <= 1e-8

    def test_integral_monte_carlo(self, half_point):
        """Test the sampled constant within four standard errors."""
        value, stderr = cq_integral_estimate(
            2.0, half_point, QuadratureSpec.monte_carlo(100000, 12345)
        )
        assert stderr > 0.0
        assert abs(value - 91.0 / 48.0) <= 4.0 * stderr

    def test_rotation_invariance(self):
        """Test that C_q(x) only depends on |x|."""
        spec = QuadratureSpec.monte_carlo(100000, 21)
        x = BallPoint.from_radius(0.6, 4)
        y = x.rotated(random_rotation(4, 3))
        a, sa = cq_integral_estimate(1.5, x, spec)
        b, sb = cq_integral_estimate(1.5, y, spec)
        assert abs(a - b) <= 5.0 * math.hypot(sa, sb)
        expected = cq_closed_form(1.5, y)
        assert cq_closed_form(1.5, x) == pytest.approx(expected, rel=1e-14)

    def test_integral_domain(self, half_point):
        """Test that the integral needs q > 1."""
        with pytest.raises(DomainError):
            cq_integral(1.0, half_point, ZONAL)
        with pytest.raises(DomainError):
            cq_closed_form(0.5, half_point)
        with pytest.raises(DomainError):
            cq_sup(math.inf, 3)

    @settings(max_examples=200, deadline=None)
    @given(n=st.sampled_from([3, 4, 5]), q=Q_VALUES, radius=RADII)
    def test_below_sup(self, n, q, radius):
        """Test C_q(x) <= C_q."""
        x = BallPoint.from_radius(radius, n)
        assert cq_closed_form(q, x) <= cq_sup(q, n) * (1.0 + 1e-12)

    def test_endpoint_continuity(self):
        """Test C_q((1 - eps) e_n) -> C_q."""
        sup = cq_sup(2.0, 4)
        gaps = [
            abs(cq_closed_form(2.0, BallPoint.from_radius(1.0 - eps, 4)) / sup - 1.0)
            for eps in (1e-2, 1e-4, 1e-6)
        ]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 1e-4

    def test_large_q_limit(self):
        """Test C_q(x)^{1/q} -> (1 + |x|)^4 in dimension 3."""
        x = BallPoint.from_radius(0.5, 3)
        target = 1.5**4
        gaps = [
            abs(cq_closed_form(q, x) ** (1.0 / q) / target - 1.0)
            for q in (10.0, 50.0, 200.0)
        ]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] <= 0.05


class TestThreeDimensional:
    """Test cases for the explicit n = 3 formula."""

    @pytest.mark.parametrize("q", [1.25, 1.5, 2.0, 3.0, 5.0])
    @pytest.mark.parametrize("rho", [0.1, 0.3, 0.5, 0.7, 0.9])
    def test_matches_closed_form(self, q, rho):
        """Test agreement with the 2F1 form."""
        assert cq_n3_closed_form(q, rho) == pytest.approx(
            cq_closed_form(q, BallPoint.from_radius(rho, 3)), rel=1e-10
        )

    def test_anchors(self):
        """Test rho = 0 and rho = 1."""
        assert cq_n3_closed_form(2.0, 0.0) == 1.0
        assert cq_n3_closed_form(2.0, 1.0) == pytest.approx(16.0 / 3.0, rel=1e-14)

    def test_small_rho(self):
        """Test the series branch near the origin."""
        rho = 1e-5
        assert cq_n3_closed_form(2.0, rho) == pytest.approx(
            cq_closed_form(2.0, BallPoint.from_radius(rho, 3)), rel=1e-14
        )
        assert cq_n3_closed_form(1.3, rho) == pytest.approx(
            cq_closed_form(1.3, BallPoint.from_radius(rho, 3)), rel=1e-12
        )

    def test_domain(self):
        """Test q > 1 and rho in [0, 1]."""
        with pytest.raises(DomainError):
            cq_n3_closed_form(1.0, 0.5)
        with pytest.raises(DomainError):
            cq_n3_closed_form(2.0, 1.5)

    def test_bound(self, half_point):
        """Test the explicit bound against the general one."""
        pair = ExponentPair.from_p(3.0)
        assert pointwise_bound_n3(pair, half_point) == pytest.approx(
            pointwise_bound(pair, half_point), rel=1e-12
        )
        with pytest.raises(DomainError):
            pointwise_bound_n3(pair, BallPoint.from_radius(0.5, 4))


class TestPolynomial:
    """Test cases for the polynomial form and its derivative."""

    def test_coefficients(self):
        """Test C_2(x) = 1 + (10/3)|x|^2 + |x|^4 in dimension 3."""
        coefficients = cq_polynomial_coefficients(2.0, 3)
        assert coefficients == pytest.approx([1.0, 10.0 / 3.0, 1.0])
        assert len(cq_polynomial_coefficients(1.5, 5)) == 3

    def test_not_polynomial(self):
        """Test that a non-integral power is rejected."""
        with pytest.raises(DomainError):
            cq_polynomial_coefficients(1.1, 3)

    def test_radial_derivative(self):
        """Test the derivative against central differences."""
        h = 1e-6
        for q, n in ((1.2, 3), (1.5, 3), (2.0, 4)):

            def c(rho, q=q, n=n):
                return cq_closed_form(q, BallPoint.from_radius(rho, n))

            numeric = (c(0.5 + h) - c(0.5 - h)) / (2.0 * h)
            assert cq_radial_derivative(q, n, 0.5) == pytest.approx(numeric, abs=1e-7)

    def test_nondecreasing(self):
        """Test that the radial derivative is nonnegative around the threshold."""
        for q, n in ((1.2, 3), (1.5, 3), (1.2, 4), (5.0, 5)):
            for rho in np.linspace(0.0, 0.98, 50):
                assert cq_radial_derivative(q, n, float(rho)) >= 0.0

    def test_derivative_domain(self):
        """Test rho in [0, 1)."""
        with pytest.raises(DomainError):
            cq_radial_derivative(2.0, 3, 1.0)

    def test_monotonicity_case(self):
        """Test the threshold q = 1 + 1/(n-1)."""
        assert monotonicity_case(1.2, 3) == "subcritical"
        assert monotonicity_case(1.5, 3) == "supercritical"
        assert monotonicity_case(1.3, 4) == "subcritical"
        assert monotonicity_case(2.0, 4) == "supercritical"


class TestBounds:
    """Test cases for the pointwise and uniform bounds."""

    def test_anchor(self, half_point):
        """Test p = 2 at 0.5 e_3."""
        pair = ExponentPair.from_p(2.0)
        assert pointwise_bound(pair, half_point) == pytest.approx(
            math.sqrt(91.0 / 48.0) / 0.75, rel=1e-12
        )
        assert uniform_bound(pair, half_point) == pytest.approx(
            math.sqrt(16.0 / 3.0) / 0.75, rel=1e-12
        )

    def test_sup_norm(self, half_point):
        """Test that p = inf gives 1."""
        pair = ExponentPair.from_p(math.inf)
        assert pointwise_bound(pair, half_point) == 1.0
        assert uniform_bound(pair, half_point) == 1.0
        assert pointwise_bound_n3(pair, half_point) == 1.0

    def test_origin(self):
        """Test that the bound is 1 at the origin."""
        assert pointwise_bound(ExponentPair.from_p(1.7), BallPoint.origin(4)) == 1.0

    @settings(max_examples=200, deadline=None)
    @given(n=st.sampled_from([3, 4, 5]), p=P_VALUES, radius=RADII)
    def test_uniform_dominates(self, n, p, radius):
        """Test pointwise <= uniform."""
        pair = ExponentPair.from_p(p)
        x = BallPoint.from_radius(radius, n)
        assert pointwise_bound(pair, x) <= uniform_bound(pair, x) * (1.0 + 1e-12)

    def test_l1_bound(self, half_point):
        """Test that the p = 1 constant is the kernel maximum."""
        assert l1_bound(half_point) == pytest.approx(9.0)
        assert l1_bound(half_point) == kernel_maximum(half_point)


class TestKernelPower:
    """Test cases for the kernel power integral."""

    @pytest.mark.parametrize(
        "n,q,radius", [(3, 2.0, 0.5), (4, 1.5, 0.8), (5, 3.0, 0.3)]
    )
    def test_closed_form(self, n, q, radius):
        """Test int P_h^q = C_q(x) / (1 - |x|^2)^{(n-1)(q-1)}."""
        x = BallPoint.from_radius(radius, n)
        assert kernel_power_integral(q, x, ZONAL) == pytest.approx(
            kernel_power_closed_form(q, x), rel=1e-10
        )

    def test_anchor(self, half_point):
        """Test n = 3, q = 2 at 0.5 e_3."""
        assert kernel_power_closed_form(2.0, half_point) == pytest.approx(
            (91.0 / 48.0) / 0.75**2, rel=1e-12
        )

    def test_monte_carlo(self, half_point):
        """Test the sampled integral is close to the closed form."""
        spec = QuadratureSpec.monte_carlo(200000, 4)
        value = kernel_power_integral(2.0, half_point, spec)
        expected = kernel_power_closed_form(2.0, half_point)
        assert value == pytest.approx(expected, rel=0.05)


class TestExtremal:
    """Test cases for the extremal boundary data."""

    def test_norm(self):
        """Test ||phi*||_p^p = int P_h^q."""
        x = BallPoint.from_radius(0.6, 4)
        pair = ExponentPair.from_p(1.5)
        phi = extremal_boundary(x, pair.q)
        assert lp_norm(phi, pair.p, ZONAL) ** pair.p == pytest.approx(
            kernel_power_closed_form(pair.q, x), rel=1e-9
        )

    def test_origin(self):
        """Test that phi* is constant at the origin."""
        phi = extremal_boundary(BallPoint.origin(3), 2.0)
        assert phi.is_zonal
        assert np.all(phi.profile_values(np.linspace(-1.0, 1.0, 5)) == 1.0)

    def test_domain(self, half_point):
        """Test that q = 1 has no extremal."""
        with pytest.raises(DomainError):
            extremal_boundary(half_point, 1.0)


class TestSharpness:
    """Test cases for verify_sharpness and bound_report."""

    @pytest.mark.parametrize("n", [3, 4])
    @pytest.mark.parametrize("p", [1.5, 2.0, 4.0])
    @pytest.mark.parametrize("radius", [0.2, 0.5, 0.8])
    def test_equality(self, n, p, radius):
        """Test that phi* attains the pointwise bound."""
        report = verify_sharpness(
            ExponentPair.from_p(p), BallPoint.from_radius(radius, n), ZONAL
        )
        assert abs(report.ratio - 1.0) <= max(report.tolerance, 1e-8)
        assert report.holds

    @pytest.mark.parametrize("n", [3, 4])
    @pytest.mark.parametrize("radius", [0.99, 0.999])
    def test_equality_near_boundary(self, n, radius):
        """Test that the extremal attains the bound where the kernel is peaked."""
        report = verify_sharpness(
            ExponentPair.from_p(2.0), BallPoint.from_radius(radius, n), ZONAL
        )
        assert report.resolved
        assert report.quadrature_error < 1e-7
        assert abs(report.ratio - 1.0) <= max(report.tolerance, 1e-8)

    def test_origin(self):
        """Test the exact case x = 0."""
        report = verify_sharpness(ExponentPair.from_p(2.0), BallPoint.origin(3), ZONAL)
        assert report.ratio == pytest.approx(1.0, abs=1e-12)
        assert report.sharp

    def test_off_axis(self):
        """Test a point off the coordinate axes."""
        report = verify_sharpness(
            ExponentPair.from_p(2.0), BallPoint([0.2, -0.3, 0.4]), ZONAL
        )
        assert abs(report.ratio - 1.0) <= max(report.tolerance, 1e-8)

    def test_sup_norm_rejected(self, half_point):
        """Test that p = inf has no extremal check."""
        with pytest.raises(DomainError):
            verify_sharpness(ExponentPair.from_p(math.inf), half_point, ZONAL)

    def test_sup_norm_constant(self, half_point):
        """Test that constants attain the p = inf bound."""
        report = bound_report(
            BoundaryFunction.constant(3, 2.0),
            ExponentPair.from_p(math.inf),
            half_point,
            ZONAL,
        )
        assert report.ratio == pytest.approx(1.0, abs=1e-9)

    @settings(max_examples=15, deadline=None)
    @given(
        seed=st.integers(min_value=0, max_value=2**32 - 1),
        p=P_VALUES,
        radius=st.floats(min_value=0.0, max_value=0.9),
    )
    def test_random_data_respects_bound(self, seed, p, radius):
        """Test that non-zonal data stays below the bound under Monte Carlo."""
        axis = UnitVector(np.random.default_rng(seed).standard_normal(4))
        report = bound_report(
            random_boundary_function(4, seed),
            ExponentPair.from_p(p),
            BallPoint.from_radius(radius, 4, axis),
            QuadratureSpec.monte_carlo(20000, 5),
            tolerance_factor=5.0,
        )
        assert report.holds

    def test_vanishing_integral(self):
        """Test the ratio of data whose integral is zero."""
        phi = BoundaryFunction.zonal(UnitVector.basis(3, 0), lambda t: t, "zeta_1")
        report = bound_report(
            phi, ExponentPair.from_p(2.0), BallPoint.from_radius(0.5, 3), ZONAL
        )
        assert report.ratio < 1e-10
        assert report.holds


class TestNorms:
    """Test cases for lp_norm."""

    @pytest.mark.parametrize("p", [1.0, 2.0, 3.5, math.inf])
    def test_constant(self, p):
        """Test that a constant has norm |C| for every p."""
        assert lp_norm(BoundaryFunction.constant(4, -3.0), p, ZONAL) == pytest.approx(
            3.0, rel=1e-12
        )

    def test_vector_constant(self):
        """Test that norms use the Euclidean length of vector data."""
        phi = BoundaryFunction.constant(3, [3.0, 4.0])
        assert lp_norm(phi, 2.0, ZONAL) == pytest.approx(5.0, rel=1e-12)

    def test_monte_carlo(self):
        """Test ||zeta_n||_2 = 1/sqrt(n) by sampling."""
        phi = BoundaryFunction.from_callable(3, lambda p: p[:, 2], "zeta_3")
        norm, err = lp_norm_estimate(phi, 2.0, QuadratureSpec.monte_carlo(100000, 2))
        assert abs(norm - 1.0 / math.sqrt(3.0)) <= 4.0 * err

    def test_sampled_sup(self):
        """Test the sup norm of non-zonal data."""
        phi = BoundaryFunction.from_callable(3, lambda p: p[:, 0], "zeta_1")
        assert 0.99 < lp_norm(phi, math.inf, QuadratureSpec.monte_carlo(1000, 1)) <= 1.0

    def test_zonal_needs_zonal_data(self):
        """Test that non-zonal data needs Monte Carlo for finite p."""
        phi = BoundaryFunction.from_callable(3, lambda p: p[:, 0], "zeta_1")
        with pytest.raises(MethodMismatch):
            lp_norm(phi, 2.0, ZONAL)

    def test_domain(self):
        """Test p >= 1."""
        with pytest.raises(DomainError):
            lp_norm(BoundaryFunction.constant(3), 0.5, ZONAL)


class TestEndpoint:
    """Test cases for the p = 1 cap sequence."""

    def test_cap_bound(self):
        """Test 1 - 1/(2 i^2)."""
        assert cap_lower_bound(1) == 0.5
        assert cap_lower_bound(10) == pytest.approx(0.995)
        with pytest.raises(DomainError):
            cap_lower_bound(0)

    def test_normalized_cap(self):
        """Test that normalized caps have unit L^1 norm."""
        for i in (1, 5, 100):
            cap = indicator_cap(UnitVector.basis(4), i)
            assert lp_norm(cap, 1.0, ZONAL) == pytest.approx(1.0, rel=1e-12)

    def test_sequence_increases_to_maximum(self):
        """Test that u_i(x0) increases to P_h(x0, eta0)."""
        x0 = BallPoint.from_radius(0.5, 3)
        eta0 = UnitVector.basis(3)
        indices = (1, 2, 5, 10, 50, 200)
        values = [l1_extremal_sequence(x0, eta0, i, ZONAL) for i in indices]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
        assert values[-1] == pytest.approx(9.0, rel=0.01)

    def test_origin(self):
        """Test that every cap averages to 1 at the origin."""
        value = l1_extremal_sequence(BallPoint.origin(3), UnitVector.basis(3), 7, ZONAL)
        assert value == pytest.approx(1.0, rel=1e-12)
