"""Geometry and integration on the unit sphere S^{n-1}.

Surface integrals use the normalized measure, sigma(S^{n-1}) = 1.
Integrands are vectorized: zonal profiles take an array of cosines, Monte
Carlo integrands take an (m, n) array of points.
"""

import logging
import math
from functools import lru_cache
from typing import Callable, List, Tuple, Union

import numpy as np
from scipy.special import betainc, gammaln, roots_jacobi, roots_legendre

from ..errors import DomainError, MethodMismatch
from ..models.geometry import BallPoint, UnitVector, check_dimension
from ..models.params import QuadratureSpec
from ..utils.workers import run_indexed

logger = logging.getLogger("HypHarm.sphere")

ZONAL_NODES = 200
MC_CHUNK_SIZE = 4096
# Integrands peaked on a scale narrower than this get a graded zonal rule.
GRADING_WIDTH = 1e-3
GRADING_RATIO = 4.0

ZonalIntegrand = Callable[[np.ndarray], np.ndarray]
BizonalIntegrand = Callable[[np.ndarray, np.ndarray], np.ndarray]
SurfaceIntegrand = Callable[[np.ndarray], np.ndarray]


def _zonal_constant(m: int) -> float:
    """Gamma(m/2) / (sqrt(pi) Gamma((m-1)/2)), the density constant of
    <e, eta> for eta uniform on S^{m-1}; valid for m >= 2."""
    return math.exp(gammaln(m / 2.0) - gammaln((m - 1) / 2.0)) / math.sqrt(math.pi)


def surface_ratio(n: int) -> float:
    """omega_{n-2} / omega_{n-1} = 1 / int_0^pi sin^{n-2}(theta) d theta."""
    return _zonal_constant(check_dimension(n))


def _panel(
    nodes: int, alpha: float, a: float, b: float
) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss rule for int_a^b g(t) (1 - t^2)^alpha dt on one panel.

    A panel touching t = 1 or t = -1 keeps that endpoint factor in the
    Jacobi weight; the remaining smooth factor is folded into the weights.
    """
    half = 0.5 * (b - a)
    if b >= 1.0:
        y, w = roots_jacobi(nodes, alpha, 0.0)
        t = a + half * (1.0 + y)
        return t, w * half ** (alpha + 1.0) * (1.0 + t) ** alpha
    if a <= -1.0:
        y, w = roots_jacobi(nodes, 0.0, alpha)
        t = a + half * (1.0 + y)
        return t, w * half ** (alpha + 1.0) * (1.0 - t) ** alpha
    y, w = roots_legendre(nodes)
    t = a + half * (1.0 + y)
    return t, w * half * (1.0 - t * t) ** alpha


def _graded_edges(lower: float, width: float) -> List[float]:
    """Panel edges 1, 1 - width, 1 - 4 width, ... down to ``lower``."""
    edges = [1.0]
    gap = width
    while 1.0 - gap > lower:
        edges.append(1.0 - gap)
        gap *= GRADING_RATIO
    edges.append(lower)
    return edges


@lru_cache(maxsize=64)
def _polar_rule(
    nodes: int, alpha: float, lower: float, width: float = 0.0
) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for int_lower^1 g(t) (1 - t^2)^alpha dt.

    The full interval uses Gauss-Jacobi with equal exponents (Gegenbauer);
    a cap [lower, 1] keeps the (1 - t)^alpha endpoint in the weight and
    folds the smooth (1 + t)^alpha into the weights. When g varies on a
    scale ``width`` < GRADING_WIDTH near t = 1, the interval is split into
    geometrically graded panels with ``nodes`` points each.
    """
    if nodes < 2:
        raise DomainError(f"zonal quadrature needs at least 2 nodes, got {nodes}")
    if 0.0 < width < GRADING_WIDTH:
        edges = _graded_edges(lower, width)
        panels = [_panel(nodes, alpha, a, b) for b, a in zip(edges, edges[1:])]
        t = np.concatenate([panel[0] for panel in panels])
        w = np.concatenate([panel[1] for panel in panels])
    elif lower <= -1.0:
        t, w = roots_jacobi(nodes, alpha, alpha)
    else:
        t, w = _panel(nodes, alpha, lower, 1.0)
    logger.debug(
        f"Built polar rule: nodes={nodes}, alpha={alpha}, lower={lower}, "
        f"width={width}, size={t.size}"
    )
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def zonal_rule(
    n: int, nodes: int = ZONAL_NODES, lower: float = -1.0, peak_width: float = 0.0
):
    """Nodes t_k and weights w_k with sum_k w_k g(t_k) ~ int g(<e, eta>) d sigma(eta)
    over the cap <e, eta> >= lower.

    A positive ``peak_width`` grades the rule toward t = 1 for integrands
    peaked there, such as the kernel near the boundary.
    """
    n = check_dimension(n)
    if not -1.0 <= lower < 1.0:
        raise DomainError(f"cap bound must lie in [-1, 1), got {lower}")
    t, w = _polar_rule(int(nodes), (n - 3) / 2.0, float(lower), float(peak_width))
    return t, w * surface_ratio(n)


def _weighted_sum(values: np.ndarray, weights: np.ndarray) -> Union[float, np.ndarray]:
    values = np.asarray(values, dtype=float)
    if values.ndim < weights.ndim:
        values = np.broadcast_to(values, weights.shape)
    total = np.tensordot(weights, values, axes=(list(range(weights.ndim)),) * 2)
    return float(total) if np.ndim(total) == 0 else total


def zonal_integral(
    n: int,
    g: ZonalIntegrand,
    nodes: int = ZONAL_NODES,
    lower: float = -1.0,
    peak_width: float = 0.0,
) -> Union[float, np.ndarray]:
    """Integrate a zonal function g(<e_n, eta>) over S^{n-1}.

    Computes surface_ratio(n) * int_0^pi g(cos theta) sin^{n-2} theta d theta
    in the variable t = cos theta, restricted to t >= ``lower``. The factor
    (1 - t^2)^{(n-3)/2} is carried by the Gauss-Jacobi weight, so polynomial
    g of degree <= 2 * nodes - 1 is integrated exactly on the full sphere.

    Args:
        n: Dimension (n >= 3)
        g: Vectorized function of t; may return shape (k,) or (k, d)
        nodes: Number of quadrature nodes (>= 2)
        lower: Lower bound of t (cap integration), default -1
        peak_width: Scale of a peak of g at t = 1; 0 for smooth g

    Returns:
        float, or ndarray of shape (d,) for vector-valued g
    """
    t, w = zonal_rule(n, nodes, lower, peak_width)
    return _weighted_sum(g(t), w)


def bizonal_integral(
    n: int,
    g: BizonalIntegrand,
    cos_angle: float,
    nodes: int = ZONAL_NODES,
    lower: float = -1.0,
    peak_width: float = 0.0,
) -> Union[float, np.ndarray]:
    """Integrate g(<e, eta>, <v, eta>) over S^{n-1} for unit axes with <e, v> = c.

    Writes <v, eta> = c t + sqrt(1 - c^2) sqrt(1 - t^2) s where t = <e, eta>
    and s is the cosine on the orthogonal S^{n-2}, and applies a tensor
    Gauss-Jacobi rule in (t, s). The t-range may be restricted to a cap, and
    the t rule is graded toward t = 1 when g peaks there on ``peak_width``.
    """
    n = check_dimension(n)
    c = float(np.clip(cos_angle, -1.0, 1.0))
    t, wt = zonal_rule(n, nodes, lower, peak_width)
    if abs(c) == 1.0:
        return _weighted_sum(g(t, c * t), wt)

    s, ws = _polar_rule(int(nodes), (n - 4) / 2.0, -1.0)
    ws = ws * _zonal_constant(n - 1)
    T = t[:, None]
    U = c * T + math.sqrt(1.0 - c * c) * np.sqrt(np.clip(1.0 - T * T, 0.0, None)) * s
    return _weighted_sum(g(np.broadcast_to(T, U.shape), U), wt[:, None] * ws[None, :])


def cap_measure(n: int, lower: float) -> float:
    """sigma({eta : <e, eta> >= lower}); (1 + t)/2 is Beta((n-1)/2, (n-1)/2)."""
    n = check_dimension(n)
    if lower <= -1.0:
        return 1.0
    if lower >= 1.0:
        return 0.0
    shape = (n - 1) / 2.0
    return float(betainc(shape, shape, 0.5 * (1.0 - lower)))


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk,)))


def _chunk_points(n: int, seed: int, chunk: int, size: int) -> np.ndarray:
    gaussian = _chunk_rng(seed, chunk).standard_normal((size, n))
    return gaussian / np.linalg.norm(gaussian, axis=1, keepdims=True)


def _chunk_sizes(count: int) -> List[int]:
    full, rest = divmod(count, MC_CHUNK_SIZE)
    return [MC_CHUNK_SIZE] * full + ([rest] if rest else [])


def uniform_sphere_array(n: int, count: int, seed: int) -> np.ndarray:
    """``count`` uniform points on S^{n-1} as a (count, n) array.

    Chunk k of 4096 points draws from its own substream derived from
    (seed, k), so any prefix of chunks is reproducible on its own.
    """
    n = check_dimension(n)
    if count < 1:
        raise DomainError(f"sample count must be positive, got {count}")
    chunks = [
        _chunk_points(n, seed, index, size)
        for index, size in enumerate(_chunk_sizes(count))
    ]
    return np.concatenate(chunks, axis=0)


def uniform_sphere_sample(n: int, count: int, seed: int) -> List[UnitVector]:
    """``count`` independent uniform draws on S^{n-1} (normalized Gaussians)."""
    return [UnitVector(point) for point in uniform_sphere_array(n, count, seed)]


def _combine(stats_a, stats_b):
    """Chan et al. pairwise update of (count, mean, M2)."""
    count_a, mean_a, m2_a = stats_a
    count_b, mean_b, m2_b = stats_b
    count = count_a + count_b
    delta = mean_b - mean_a
    mean = mean_a + delta * (count_b / count)
    m2 = m2_a + m2_b + delta * delta * (count_a * count_b / count)
    return count, mean, m2


def monte_carlo_surface_integral(
    f: SurfaceIntegrand, n: int, spec: QuadratureSpec, threads: int = 1
) -> Tuple[Union[float, np.ndarray], Union[float, np.ndarray]]:
    """Sample mean and standard error of f over uniform points on S^{n-1}.

    Chunks may be evaluated on several threads; their statistics are
    reduced serially in chunk order, so the result is bit-for-bit the same
    for any thread count.

    Args:
        f: Vectorized integrand, (m, n) points -> (m,) or (m, d) values
        n: Dimension
        spec: Monte Carlo spec (``nodes`` samples, ``seed``)
        threads: Worker threads for chunk evaluation

    Returns:
        Tuple: (estimate, stderr), floats for scalar f, arrays for vector f

    Raises:
        MethodMismatch: If spec is not a Monte Carlo spec
    """
    if spec.is_zonal:
        raise MethodMismatch("monte_carlo_surface_integral needs a Monte Carlo spec")
    n = check_dimension(n)

    def chunk_task(index: int, size: int):
        def task():
            values = np.asarray(f(_chunk_points(n, spec.seed, index, size)), float)
            if values.ndim == 0:
                values = np.broadcast_to(values, (size,))
            mean = values.mean(axis=0)
            return size, mean, np.sum((values - mean) ** 2, axis=0)

        return task

    sizes = _chunk_sizes(spec.nodes)
    stats = run_indexed(
        [chunk_task(index, size) for index, size in enumerate(sizes)], threads
    )
    total = stats[0]
    for chunk_stats in stats[1:]:
        total = _combine(total, chunk_stats)
    count, mean, m2 = total
    variance = m2 / (count - 1) if count > 1 else np.zeros_like(mean)
    stderr = np.sqrt(variance / count)
    logger.debug(f"Monte Carlo over {len(sizes)} chunks, {count} samples")
    if np.ndim(mean) == 0:
        return float(mean), float(stderr)
    return mean, stderr


def mobius_boundary_map_many(x: BallPoint, etas: np.ndarray) -> np.ndarray:
    """Vectorized T_x on the rows of ``etas``."""
    diff = np.atleast_2d(etas) - x.coords
    dist2 = np.sum(diff * diff, axis=1, keepdims=True)
    image = x.coords - x.boundary_gap * diff / dist2
    return image / np.linalg.norm(image, axis=1, keepdims=True)


def mobius_boundary_map(x: BallPoint, eta: UnitVector) -> UnitVector:
    """T_x(eta) = x - (1 - |x|^2)(eta - x) / |eta - x|^2, a bijection of S^{n-1}."""
    return UnitVector(mobius_boundary_map_many(x, eta.coords)[0])


def mobius_jacobian_many(x: BallPoint, etas: np.ndarray) -> np.ndarray:
    diff = np.atleast_2d(etas) - x.coords
    dist2 = np.sum(diff * diff, axis=1)
    return (x.boundary_gap / dist2) ** (x.n - 1)


def mobius_jacobian(x: BallPoint, eta: UnitVector) -> float:
    """d sigma(T_x eta) / d sigma(eta) = (1 - |x|^2)^{n-1} / |eta - x|^{2(n-1)}."""
    return float(mobius_jacobian_many(x, eta.coords)[0])


def random_rotation(n: int, seed: int) -> np.ndarray:
    """A Haar-distributed orthogonal n x n matrix."""
    n = check_dimension(n)
    matrix = np.random.default_rng(seed).standard_normal((n, n))
    q, r = np.linalg.qr(matrix)
    return q * np.sign(np.diag(r))
