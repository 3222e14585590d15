"""Poisson-Szegő kernel, invariant Poisson integral and the hyperbolic Laplacian."""

import logging
import math
from typing import Callable

import numpy as np

from ..errors import DomainError, MethodMismatch
from ..models.boundary import BoundaryFunction
from ..models.geometry import BallPoint, UnitVector
from ..models.params import QuadratureSpec
from ..models.reports import IntegralEstimate
from .sphere import (
    bizonal_integral,
    monte_carlo_surface_integral,
    zonal_integral,
    zonal_rule,
)

logger = logging.getLogger("HypHarm.kernel")

# Beyond this radius the (n-1)-th power spans too many orders of magnitude
# for direct evaluation.
LOG_SPACE_RADIUS = 0.99
HARMONIC_STEP = 1e-3
# Axes whose cosine is within this of +-1 are treated as parallel.
PARALLEL_TOLERANCE = 1e-14


def _kernel_from_distance(n: int, radius: float, dist2: np.ndarray) -> np.ndarray:
    gap = (1.0 - radius) * (1.0 + radius)
    if radius > LOG_SPACE_RADIUS:
        return np.exp((n - 1) * (math.log(gap) - np.log(dist2)))
    return (gap / dist2) ** (n - 1)


def poisson_szego_profile(n: int, radius: float, t: np.ndarray) -> np.ndarray:
    """P_h(x, zeta) as a function of t = <x/|x|, zeta> for |x| = radius."""
    t = np.asarray(t, dtype=float)
    # |x - zeta|^2 = (1 - r)^2 + 2r(1 - t), exact near t = 1
    dist2 = (1.0 - radius) ** 2 + 2.0 * radius * (1.0 - t)
    return _kernel_from_distance(n, radius, dist2)


def kernel_peak_width(radius: float) -> float:
    """Scale in 1 - t on which P_h(x, .) falls off around x/|x| for |x| = radius.

    P_h stays within a bounded factor of its maximum while 2r(1 - t) <= (1 - r)^2.
    """
    if radius <= 0.0:
        return math.inf
    return (1.0 - radius) ** 2 / (2.0 * radius)


def poisson_szego_many(x: BallPoint, zetas: np.ndarray) -> np.ndarray:
    """Kernel values at each row of ``zetas``."""
    diff = np.atleast_2d(zetas) - x.coords
    return _kernel_from_distance(x.n, x.norm, np.sum(diff * diff, axis=1))


def poisson_szego(x: BallPoint, zeta: UnitVector) -> float:
    """P_h(x, zeta) = ((1 - |x|^2) / |x - zeta|^2)^{n-1}."""
    if zeta.n != x.n:
        raise DomainError(f"zeta has dimension {zeta.n}, expected {x.n}")
    return float(poisson_szego_many(x, zeta.coords)[0])


def kernel_maximum(x: BallPoint) -> float:
    """max over zeta of P_h(x, zeta) = ((1 + |x|)/(1 - |x|))^{n-1}, at zeta = x/|x|."""
    r = x.norm
    return ((1.0 + r) / (1.0 - r)) ** (x.n - 1)


def poisson_integral(
    phi: BoundaryFunction,
    x: BallPoint,
    spec: QuadratureSpec,
    threads: int = 1,
) -> IntegralEstimate:
    """Componentwise invariant Poisson integral P_h[phi](x).

    The zonal method needs phi zonal about some axis. When that axis is
    parallel to x the integrand is zonal and a one-dimensional rule is used;
    otherwise the tensor rule of :func:`bizonal_integral` handles the two
    axes. Near the boundary the rule in the kernel variable is graded on
    :func:`kernel_peak_width`. Monte Carlo accepts any phi.

    Raises:
        MethodMismatch: If the zonal method is requested for non-zonal phi
    """
    if phi.n != x.n:
        raise DomainError(f"phi lives on S^{phi.n - 1}, x is in B^{x.n}")
    n, d = x.n, phi.components

    if spec.is_zonal:
        if not phi.is_zonal:
            raise MethodMismatch(
                f"zonal quadrature requested for non-zonal boundary data {phi.label}"
            )
        if x.is_origin:
            lower, width = phi.support_min, phi.peak_width
            value = zonal_integral(n, phi.profile_values, spec.nodes, lower, width)
            evaluations = zonal_rule(n, spec.nodes, lower, width)[0].size
        else:
            radius = x.norm
            width = kernel_peak_width(radius)
            cos_angle = phi.axis.dot(x.direction)
            if abs(abs(cos_angle) - 1.0) < PARALLEL_TOLERANCE:
                cos_angle = math.copysign(1.0, cos_angle)
            if phi.support_min > -1.0:
                # Caps are cut in the cosine about phi's axis.
                width = width if cos_angle == 1.0 else 0.0

                def integrand(t: np.ndarray, u: np.ndarray) -> np.ndarray:
                    data = phi.profile_values(t.ravel()).reshape(t.shape + (d,))
                    return poisson_szego_profile(n, radius, u)[..., None] * data

                lower = phi.support_min
            else:

                def integrand(t: np.ndarray, u: np.ndarray) -> np.ndarray:
                    data = phi.profile_values(u.ravel()).reshape(u.shape + (d,))
                    return poisson_szego_profile(n, radius, t)[..., None] * data

                lower = -1.0
            value = bizonal_integral(n, integrand, cos_angle, spec.nodes, lower, width)
            size = zonal_rule(n, spec.nodes, lower, width)[0].size
            evaluations = size if abs(cos_angle) == 1.0 else size * spec.nodes
        value = np.atleast_1d(np.asarray(value, dtype=float))
        return IntegralEstimate(value, np.zeros(d), spec.method, evaluations)

    def sampled(points: np.ndarray) -> np.ndarray:
        return poisson_szego_many(x, points)[:, None] * phi.evaluate_many(points)

    mean, stderr = monte_carlo_surface_integral(sampled, n, spec, threads)
    return IntegralEstimate(
        np.atleast_1d(mean), np.atleast_1d(stderr), spec.method, spec.nodes
    )


def kernel_normalization(x: BallPoint, spec: QuadratureSpec, threads: int = 1) -> float:
    """Numerical value of int P_h(x, zeta) d sigma(zeta); analytically 1."""
    return kernel_normalization_estimate(x, spec, threads).scalar


def kernel_normalization_estimate(
    x: BallPoint, spec: QuadratureSpec, threads: int = 1
) -> IntegralEstimate:
    """As :func:`kernel_normalization`, keeping the Monte Carlo standard error."""
    axis = x.direction or UnitVector.basis(x.n)
    one = BoundaryFunction.zonal(axis, np.ones_like, "one")
    return poisson_integral(one, x, spec, threads)


def suggested_step(x: BallPoint, h: float = HARMONIC_STEP) -> float:
    """Finite-difference step h, shrunk in proportion to 1 - |x| near the boundary."""
    return h * min(1.0, 4.0 * (1.0 - x.norm))


def hyperbolic_laplacian_residual(
    u: Callable[[BallPoint], float], x: BallPoint, h: float = HARMONIC_STEP
) -> float:
    """Central-difference estimate of Delta_h u(x).

    Delta_h u = (1 - |x|^2)^2 Delta u + 2(n - 2)(1 - |x|^2) sum_i x_i du/dx_i

    Args:
        u: Real function on the ball
        x: Evaluation point, at distance > 2h from the boundary
        h: Finite-difference step

    Returns:
        float: The residual; second order in h for smooth u

    Raises:
        DomainError: If the stencil would leave the ball
    """
    if not h > 0.0:
        raise DomainError(f"finite-difference step must be positive, got {h}")
    if 1.0 - x.norm <= 2.0 * h:
        raise DomainError(
            f"stencil of step {h} at |x| = {x.norm} leaves the unit ball"
        )
    n = x.n
    center = u(x)
    laplacian = 0.0
    radial = 0.0
    for i in range(n):
        step = np.zeros(n)
        step[i] = h
        forward = u(BallPoint(x.coords + step))
        backward = u(BallPoint(x.coords - step))
        laplacian += (forward - 2.0 * center + backward) / (h * h)
        radial += x.coords[i] * (forward - backward) / (2.0 * h)
    gap = x.boundary_gap
    return gap * gap * laplacian + 2.0 * (n - 2) * gap * radial
