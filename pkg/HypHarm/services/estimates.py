"""Sharp pointwise estimates for invariant Poisson integrals.

For p in (1, inf] with conjugate q and u = P_h[phi]:

    |u(x)| <= C_q(x)^{1/q} / (1 - |x|^2)^{(n-1)/p} * ||phi||_p
    |u(x)| <= C_q^{1/q}    / (1 - |x|^2)^{(n-1)/p} * ||phi||_p

with C_q(x) = int |x - eta|^{2(n-1)(q-1)} d sigma(eta)
            = 2F1(-(n-1)(q-1), n/2 + q - nq; n/2; |x|^2)
and C_q = sup_x C_q(x) = C_q(e_n). Equality at x is attained by
phi* = P_h(x, .)^{q-1}. For p = 1 the sharp constant is max P_h(x, .),
approached by normalized indicators of shrinking caps.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from ..errors import DomainError, MethodMismatch
from ..models.boundary import BoundaryFunction
from ..models.geometry import BallPoint, UnitVector, check_dimension
from ..models.params import ExponentPair, HypergeomParams, QuadratureSpec
from ..models.reports import SharpnessReport
from ..utils.numeric import snap_integer
from .hypergeom import (
    gauss_2f1_at_one,
    gauss_2f1_derivative,
    gauss_2f1_series,
    series_coefficients,
)
from .kernel import (
    kernel_maximum,
    kernel_normalization,
    kernel_peak_width,
    poisson_integral,
    poisson_szego_many,
    poisson_szego_profile,
)
from .sphere import (
    cap_measure,
    monte_carlo_surface_integral,
    uniform_sphere_array,
    zonal_integral,
)

logger = logging.getLogger("HypHarm.estimates")

SHARPNESS_FACTOR = 10.0
# Dense sampling size for sup norms.
SUP_SAMPLES = 100_000
# Below this radius the n = 3 formula loses digits to cancellation.
N3_SERIES_RADIUS = 1e-4


def _check_q(q: float, strict: bool) -> float:
    q = float(q)
    if not math.isfinite(q) or q < 1.0 or (strict and q == 1.0):
        bound = "q > 1" if strict else "q >= 1"
        raise DomainError(f"exponent must satisfy {bound} and be finite, got {q}")
    return q


def _power(q: float, n: int) -> float:
    """(n - 1)(q - 1), snapped to an integer when within 1e-12."""
    return snap_integer((n - 1) * (q - 1.0))


def cq_params(q: float, n: int) -> HypergeomParams:
    """2F1 parameters of C_q: (-(n-1)(q-1), n/2 + q - nq; n/2).

    q is snapped so that (n-1)(q-1) is exactly integral when it is within
    1e-12 of an integer, which makes the series terminate exactly.
    """
    n = check_dimension(n)
    k = _power(_check_q(q, strict=False), n)
    # n/2 + q - nq = n/2 - (n-1) - (n-1)(q-1)
    return HypergeomParams(-k, n / 2.0 - (n - 1) - k, n / 2.0)


def monotonicity_case(q: float, n: int) -> str:
    """Which monotonicity argument covers q: below or above 1 + 1/(n-1)."""
    q = _check_q(q, strict=False)
    critical = 1.0 + 1.0 / (check_dimension(n) - 1)
    return "subcritical" if q < critical else "supercritical"


def cq_integral_estimate(
    q: float, x: BallPoint, spec: QuadratureSpec, threads: int = 1
) -> Tuple[float, float]:
    """Numerical C_q(x) with its standard error (zero for the zonal rule).

    The zonal method integrates (1 + |x|^2 - 2|x| t)^{(n-1)(q-1)} in
    t = <x/|x|, eta>.
    """
    q = _check_q(q, strict=True)
    n, r = x.n, x.norm
    k = _power(q, n)
    if spec.is_zonal:
        value = zonal_integral(
            n, lambda t: ((1.0 - r) ** 2 + 2.0 * r * (1.0 - t)) ** k, spec.nodes
        )
        return value, 0.0

    def integrand(points: np.ndarray) -> np.ndarray:
        diff = points - x.coords
        return np.sum(diff * diff, axis=1) ** k

    return monte_carlo_surface_integral(integrand, n, spec, threads)


def cq_integral(
    q: float, x: BallPoint, spec: QuadratureSpec, threads: int = 1
) -> float:
    """Numerical C_q(x) = int |x - eta|^{2(n-1)(q-1)} d sigma(eta)."""
    return cq_integral_estimate(q, x, spec, threads)[0]


def cq_closed_form(q: float, x: BallPoint) -> float:
    """C_q(x) = 2F1(-(n-1)(q-1), n/2 + q - nq; n/2; |x|^2); 1 for q = 1."""
    return gauss_2f1_series(cq_params(q, x.n), x.norm_squared)


def cq_sup(q: float, n: int) -> float:
    """C_q = sup over the ball of C_q(x) = C_q(e_n), by Gauss's summation.

    c - a - b = (n-1)(2q-1) > 0, so the series converges at 1.
    """
    q = _check_q(q, strict=False)
    if q == 1.0:
        return 1.0
    return gauss_2f1_at_one(cq_params(q, n))


def cq_n3_closed_form(q: float, rho: float) -> float:
    """Explicit n = 3 constant ((1+rho)^{4q-2} - (1-rho)^{4q-2}) / (4(2q-1) rho)."""
    q = _check_q(q, strict=True)
    if not 0.0 <= rho <= 1.0:
        raise DomainError(f"rho must lie in [0, 1], got {rho}")
    m = 4.0 * q - 2.0
    if rho < N3_SERIES_RADIUS:
        rho2 = rho * rho
        c1 = (m - 1.0) * (m - 2.0) / 6.0
        c2 = c1 * (m - 3.0) * (m - 4.0) / 20.0
        return 1.0 + c1 * rho2 + c2 * rho2 * rho2
    return ((1.0 + rho) ** m - (1.0 - rho) ** m) / (2.0 * m * rho)


def cq_polynomial_coefficients(q: float, n: int) -> List[float]:
    """Coefficients of C_q(x) as a polynomial in |x|^2 when (n-1)(q-1) is integral."""
    params = cq_params(q, n)
    if not params.terminating:
        raise DomainError(
            f"(n-1)(q-1) = {(n - 1) * (q - 1.0)} is not an integer; "
            "C_q(x) is not a polynomial"
        )
    return series_coefficients(params, params.degree + 1)


def cq_radial_derivative(q: float, n: int, rho: float) -> float:
    """d/d rho of C_q(rho e_n), that is 2 rho times the 2F1 derivative at rho^2."""
    if not 0.0 <= rho < 1.0:
        raise DomainError(f"rho must lie in [0, 1), got {rho}")
    return 2.0 * rho * gauss_2f1_derivative(cq_params(q, n), rho * rho)


def _bound(q: float, p: float, n: int, constant: float, x: BallPoint) -> float:
    return math.exp(math.log(constant) / q - (n - 1) / p * math.log(x.boundary_gap))


def pointwise_bound(exponents: ExponentPair, x: BallPoint) -> float:
    """C_q(x)^{1/q} / (1 - |x|^2)^{(n-1)/p}; 1 for p = inf."""
    if exponents.is_sup_norm:
        return 1.0
    constant = cq_closed_form(exponents.q, x)
    return _bound(exponents.q, exponents.p, x.n, constant, x)


def uniform_bound(exponents: ExponentPair, x: BallPoint) -> float:
    """C_q^{1/q} / (1 - |x|^2)^{(n-1)/p}; 1 for p = inf."""
    if exponents.is_sup_norm:
        return 1.0
    constant = cq_sup(exponents.q, x.n)
    return _bound(exponents.q, exponents.p, x.n, constant, x)


def pointwise_bound_n3(exponents: ExponentPair, x: BallPoint) -> float:
    """The explicit three-dimensional form of :func:`pointwise_bound`."""
    if x.n != 3:
        raise DomainError(f"the explicit formula is for n = 3, got n = {x.n}")
    if exponents.is_sup_norm:
        return 1.0
    constant = cq_n3_closed_form(exponents.q, x.norm)
    return _bound(exponents.q, exponents.p, 3, constant, x)


def l1_bound(x: BallPoint) -> float:
    """Sharp p = 1 constant: max over zeta of P_h(x, zeta)."""
    return kernel_maximum(x)


def kernel_power_closed_form(q: float, x: BallPoint) -> float:
    """int P_h(x, zeta)^q d sigma = C_q(x) / (1 - |x|^2)^{(n-1)(q-1)}."""
    q = _check_q(q, strict=False)
    gap_power = (x.n - 1) * (q - 1.0) * math.log(x.boundary_gap)
    return math.exp(math.log(cq_closed_form(q, x)) - gap_power)


def kernel_power_integral(
    q: float, x: BallPoint, spec: QuadratureSpec, threads: int = 1
) -> float:
    """Numerical int P_h(x, zeta)^q d sigma(zeta)."""
    q = _check_q(q, strict=False)
    n, r = x.n, x.norm
    if spec.is_zonal:
        return zonal_integral(
            n,
            lambda t: poisson_szego_profile(n, r, t) ** q,
            spec.nodes,
            peak_width=kernel_peak_width(r),
        )
    estimate, _ = monte_carlo_surface_integral(
        lambda points: poisson_szego_many(x, points) ** q, n, spec, threads
    )
    return estimate


def extremal_boundary(x: BallPoint, q: float) -> BoundaryFunction:
    """phi*(zeta) = P_h(x, zeta)^{q/p} = P_h(x, zeta)^{q-1}, zonal about x/|x|."""
    q = _check_q(q, strict=True)
    n, r = x.n, x.norm
    label = f"extremal(n={n}, q={q:g}, |x|={r:g})"
    if x.is_origin:
        return BoundaryFunction.zonal(UnitVector.basis(n), np.ones_like, label)
    return BoundaryFunction.zonal(
        x.direction,
        lambda t: poisson_szego_profile(n, r, t) ** (q - 1.0),
        label,
        peak_width=kernel_peak_width(r),
    )


def cap_lower_bound(i: int) -> float:
    """Cosine bound of the cap {|zeta - eta0| <= 1/i}: <zeta, eta0> >= 1 - 1/(2 i^2)."""
    if int(i) != i or i < 1:
        raise DomainError(f"cap index must be a positive integer, got {i}")
    return 1.0 - 0.5 / (i * i)


def indicator_cap(
    center: UnitVector, i: int, normalized: bool = True
) -> BoundaryFunction:
    """chi of {|zeta - center| <= 1/i}, divided by its L^1 mass when normalized."""
    lower = cap_lower_bound(i)
    height = 1.0 / cap_measure(center.n, lower) if normalized else 1.0
    return BoundaryFunction.zonal(
        center,
        lambda t: np.full(np.shape(t), height),
        f"cap(i={i}{', normalized' if normalized else ''})",
        support_min=lower,
    )


def l1_extremal_sequence(
    x0: BallPoint,
    eta0: UnitVector,
    i: int,
    spec: QuadratureSpec,
    threads: int = 1,
) -> float:
    """u_i(x0) = P_h[phi_i](x0) for the normalized cap indicator phi_i about eta0.

    Increases to P_h(x0, eta0) as i grows when x0 = |x0| eta0.
    """
    cap = indicator_cap(eta0, i)
    return poisson_integral(cap, x0, spec, threads).scalar


def lp_norm_estimate(
    phi: BoundaryFunction, p: float, spec: QuadratureSpec, threads: int = 1
) -> Tuple[float, float]:
    """||phi||_p with its standard error (zero for zonal rules and sup norms)."""
    p = float(p)
    if not p >= 1.0:
        raise DomainError(f"p must lie in [1, inf], got {p}")
    n = phi.n

    if math.isinf(p):
        if phi.is_zonal:
            t = np.linspace(phi.support_min, 1.0, SUP_SAMPLES)
            values = phi.profile_values(t)
        else:
            samples = max(SUP_SAMPLES, 0 if spec.is_zonal else spec.nodes)
            values = phi.evaluate_many(uniform_sphere_array(n, samples, spec.seed))
        return float(np.max(np.linalg.norm(values, axis=1))), 0.0

    if spec.is_zonal:
        if not phi.is_zonal:
            raise MethodMismatch(
                f"zonal quadrature requested for non-zonal boundary data {phi.label}"
            )
        integral = zonal_integral(
            n,
            lambda t: np.linalg.norm(phi.profile_values(t), axis=1) ** p,
            spec.nodes,
            phi.support_min,
            phi.peak_width,
        )
        integral_err = 0.0
    else:
        integral, integral_err = monte_carlo_surface_integral(
            lambda points: np.linalg.norm(phi.evaluate_many(points), axis=1) ** p,
            n,
            spec,
            threads,
        )
    norm = integral ** (1.0 / p)
    norm_err = norm / (p * integral) * integral_err if integral > 0.0 else 0.0
    return float(norm), float(norm_err)


def lp_norm(
    phi: BoundaryFunction, p: float, spec: QuadratureSpec, threads: int = 1
) -> float:
    """(int |phi|^p d sigma)^{1/p}, or the sampled sup for p = inf."""
    return lp_norm_estimate(phi, p, spec, threads)[0]


def _zonal_quadrature_error(exponents: ExponentPair, x: BallPoint, nodes: int) -> float:
    """Measured error of the zonal rule on the two integrals behind the bound:
    kernel normalization and the kernel power integral."""
    spec = QuadratureSpec.zonal(nodes)
    error = abs(kernel_normalization(x, spec) - 1.0)
    if not exponents.is_sup_norm:
        exact = kernel_power_closed_form(exponents.q, x)
        error += abs(kernel_power_integral(exponents.q, x, spec) - exact) / exact
    return error


def bound_report(
    phi: BoundaryFunction,
    exponents: ExponentPair,
    x: BallPoint,
    spec: QuadratureSpec,
    threads: int = 1,
    tolerance_factor: float = SHARPNESS_FACTOR,
) -> SharpnessReport:
    """Compare |P_h[phi](x)| with pointwise_bound(x) * ||phi||_p."""
    estimate = poisson_integral(phi, x, spec, threads)
    norm, norm_err = lp_norm_estimate(phi, exponents.p, spec, threads)
    lhs = estimate.magnitude
    rhs = pointwise_bound(exponents, x) * norm
    if rhs > 0.0:
        ratio = lhs / rhs
    else:
        ratio = 0.0 if lhs == 0.0 else math.inf

    if spec.is_zonal:
        quadrature_error = _zonal_quadrature_error(exponents, x, spec.nodes)
    else:
        quadrature_error = (estimate.magnitude_stderr / lhs if lhs > 0.0 else 0.0) + (
            norm_err / norm if norm > 0.0 else 0.0
        )
    logger.debug(
        f"Bound check for {phi.label} at |x|={x.norm:g}, p={exponents.p:g}: "
        f"ratio={ratio!r}, quadrature_error={quadrature_error:.3g}"
    )
    return SharpnessReport(
        x=x,
        exponents=exponents,
        lhs=lhs,
        rhs=rhs,
        ratio=ratio,
        quadrature_error=quadrature_error,
        label=phi.label,
        tolerance_factor=tolerance_factor,
    )


def verify_sharpness(
    exponents: ExponentPair,
    x: BallPoint,
    spec: QuadratureSpec,
    threads: int = 1,
    tolerance_factor: float = SHARPNESS_FACTOR,
    phi: Optional[BoundaryFunction] = None,
) -> SharpnessReport:
    """Evaluate the bound on the extremal phi*; the ratio should be 1.

    Raises:
        DomainError: If p is not finite
    """
    if exponents.is_sup_norm:
        raise DomainError("sharpness via phi* needs a finite p in (1, inf)")
    phi = phi or extremal_boundary(x, exponents.q)
    return bound_report(phi, exponents, x, spec, threads, tolerance_factor)
