"""Gauss hypergeometric function 2F1 and its building blocks.

Evaluation paths:

- power series (exact polynomial when a or b is a nonpositive integer),
- Euler's integral representation by Gauss-Jacobi quadrature,
- the derivative formula d/dx 2F1(a, b; c; x) = (ab/c) 2F1(a+1, b+1; c+1; x),
- Gauss's summation theorem at x = 1.

All functions are pure and safe to call from several threads.
"""

import logging
import math
from functools import lru_cache
from typing import List, Tuple

import numpy as np
from scipy.special import gammaln, gammasgn, roots_jacobi, roots_legendre

from ..errors import DomainError, NoConvergence
from ..models.params import HypergeomParams
from ..utils.numeric import is_nonpositive_integer

logger = logging.getLogger("HypHarm.hypergeom")

SERIES_TOLERANCE = 1e-16
MAX_TERMS = 100_000
INTEGRAL_NODES = 200

# Terms are generated in numpy blocks; the stopping rule is still applied
# term by term inside each block.
_SERIES_BLOCK = 256
# Below this, t^(b-1) or (1-t)^(c-b-1) is too singular for Jacobi nodes.
_MARGINAL_EXPONENT = 0.01
_LOG_FLOAT_MAX = math.log(np.finfo(float).max)


def _check_order(k: int) -> int:
    if int(k) != k or k < 0:
        raise DomainError(f"Pochhammer order must be a nonnegative integer, got {k}")
    return int(k)


def log_pochhammer(a: float, k: int) -> Tuple[float, float]:
    """Sign and log-magnitude of the rising factorial (a)_k.

    Returns:
        Tuple[float, float]: (sign, log|(a)_k|); sign is 0.0 and the log is
        -inf when one of the factors vanishes
    """
    k = _check_order(k)
    if k == 0:
        return 1.0, 0.0
    factors = a + np.arange(k, dtype=float)
    if np.any(factors == 0.0):
        return 0.0, -math.inf
    sign = -1.0 if np.count_nonzero(factors < 0.0) % 2 else 1.0
    return sign, float(np.sum(np.log(np.abs(factors))))


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = a(a+1)...(a+k-1), with (a)_0 = 1.

    The direct product is used while it stays finite; otherwise the value is
    rebuilt from :func:`log_pochhammer`.
    """
    k = _check_order(k)
    if k == 0:
        return 1.0
    factors = a + np.arange(k, dtype=float)
    if np.any(factors == 0.0):
        return 0.0
    with np.errstate(over="ignore", under="ignore"):
        product = float(np.prod(factors))
    if math.isfinite(product) and product != 0.0:
        return product
    sign, log_abs = log_pochhammer(a, k)
    if log_abs > _LOG_FLOAT_MAX:
        return sign * math.inf
    return sign * math.exp(log_abs)


def _check_series_domain(params: HypergeomParams, x: float) -> None:
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x}")
    if abs(x) > 1.0:
        raise DomainError(f"|x| = {abs(x)} > 1 is outside the disc of convergence")
    if abs(x) == 1.0 and params.excess <= 0.0:
        raise DomainError(
            f"2F1 series at |x| = 1 needs c - a - b > 0, got {params.excess}"
        )


def _terminating_sum(params: HypergeomParams, x: float) -> float:
    """Exact sum of the degree-m polynomial."""
    a, b, c = params.a, params.b, params.c
    term = 1.0
    total = 1.0
    for k in range(params.degree):
        term *= (a + k) * (b + k) / ((k + 1) * (c + k)) * x
        total += term
    return total


def _convergent_sum(
    params: HypergeomParams, x: float, tol: float, max_terms: int
) -> float:
    a, b, c = params.a, params.b, params.c
    total = 1.0
    term = 1.0
    start = 0
    while start < max_terms - 1:
        k = np.arange(start, min(start + _SERIES_BLOCK, max_terms - 1), dtype=float)
        ratios = (a + k) * (b + k) / ((k + 1.0) * (c + k)) * x
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            terms = term * np.cumprod(ratios)
            partial = total + np.cumsum(terms)
        if not np.all(np.isfinite(partial)):
            raise NoConvergence(
                f"2F1{params.a, params.b, params.c} series overflowed at x = {x}",
                terms=start,
                partial_sum=total,
            )
        stopped = np.nonzero(np.abs(terms) < tol * np.abs(partial))[0]
        if stopped.size:
            index = int(stopped[0])
            logger.debug(
                f"2F1 series converged after {start + index + 2} terms at x = {x}"
            )
            return float(partial[index])
        term = float(terms[-1])
        total = float(partial[-1])
        start += k.size
    raise NoConvergence(
        f"2F1({a}, {b}; {c}; {x}) series did not converge within {max_terms} terms",
        terms=max_terms,
        partial_sum=total,
    )


def gauss_2f1_series(
    params: HypergeomParams,
    x: float,
    tol: float = SERIES_TOLERANCE,
    max_terms: int = MAX_TERMS,
) -> float:
    """Sum the hypergeometric series sum_k (a)_k (b)_k / (k! (c)_k) x^k.

    Args:
        params: The (a, b; c) parameters
        x: Argument with |x| < 1, or |x| = 1 when c - a - b > 0
        tol: Stop once |term| < tol * |partial sum|
        max_terms: Hard cap on the number of terms

    Returns:
        float: The value of 2F1(a, b; c; x)

    Raises:
        DomainError: If x is outside the region of convergence
        NoConvergence: If the cap is reached before the stopping rule fires
    """
    params = params.snapped()
    _check_series_domain(params, x)
    if x == 0.0:
        return 1.0
    if params.terminating:
        return _terminating_sum(params, x)
    return _convergent_sum(params, x, tol, max_terms)


def series_coefficients(params: HypergeomParams, count: int) -> List[float]:
    """First ``count`` coefficients (a)_k (b)_k / (k! (c)_k) of the series.

    A terminating series is cut at its degree.
    """
    params = params.snapped()
    if params.terminating:
        count = min(count, params.degree + 1)
    a, b, c = params.a, params.b, params.c
    coefficients = [1.0]
    for k in range(count - 1):
        coefficients.append(coefficients[-1] * (a + k) * (b + k) / ((k + 1) * (c + k)))
    return coefficients[:count]


@lru_cache(maxsize=64)
def _jacobi_rule(
    nodes: int, alpha: float, beta: float
) -> Tuple[np.ndarray, np.ndarray]:
    y, w = roots_jacobi(nodes, alpha, beta)
    y.setflags(write=False)
    w.setflags(write=False)
    return y, w


@lru_cache(maxsize=16)
def _legendre_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    y, w = roots_legendre(nodes)
    y.setflags(write=False)
    w.setflags(write=False)
    return y, w


def _regularized_integral(a: float, b: float, c: float, x: float, nodes: int) -> float:
    """Beta-weighted integral with the endpoint singularities substituted away.

    On [0, 1/2] put t = s^(1/b), on [1/2, 1] put 1 - t = r^(1/(c-b)); both
    integrands are then smooth and Gauss-Legendre applies.
    """
    y, w = _legendre_rule(nodes)
    u = 0.5 * (1.0 + y)

    s_max = 0.5**b
    t = (s_max * u) ** (1.0 / b)
    left = np.sum(w * (1.0 - t) ** (c - b - 1.0) * (1.0 - t * x) ** (-a))
    left *= 0.5 * s_max / b

    r_max = 0.5 ** (c - b)
    t = 1.0 - (r_max * u) ** (1.0 / (c - b))
    right = np.sum(w * t ** (b - 1.0) * (1.0 - t * x) ** (-a))
    right *= 0.5 * r_max / (c - b)
    return float(left + right)


def gauss_2f1_integral(
    params: HypergeomParams, x: float, nodes: int = INTEGRAL_NODES
) -> float:
    """Evaluate 2F1 through Euler's integral representation.

    2F1(a, b; c; x) = Gamma(c) / (Gamma(b) Gamma(c-b))
                      * int_0^1 t^(b-1) (1-t)^(c-b-1) (1-tx)^(-a) dt

    Args:
        params: Parameters with c > b > 0
        x: Argument with |x| < 1
        nodes: Quadrature nodes (at least 200 on the regularized path)

    Returns:
        float: The value of 2F1(a, b; c; x)

    Raises:
        DomainError: If c <= b, b <= 0 or |x| >= 1
    """
    a, b, c = params.a, params.b, params.c
    if not (c > b > 0.0):
        raise DomainError(f"integral representation needs c > b > 0, got b={b}, c={c}")
    if not abs(x) < 1.0:
        raise DomainError(f"integral representation needs |x| < 1, got {x}")

    log_norm = float(gammaln(c) - gammaln(b) - gammaln(c - b))
    if min(b, c - b) >= _MARGINAL_EXPONENT:
        y, w = _jacobi_rule(nodes, c - b - 1.0, b - 1.0)
        t = 0.5 * (1.0 + y)
        integral = float(np.sum(w * (1.0 - t * x) ** (-a)))
        return math.exp(log_norm + (1.0 - c) * math.log(2.0)) * integral

    logger.debug(f"2F1 integral for b={b}, c={c} uses the regularized path")
    integral = _regularized_integral(a, b, c, x, max(nodes, INTEGRAL_NODES))
    return math.exp(log_norm) * integral


def gauss_2f1_derivative(params: HypergeomParams, x: float) -> float:
    """d/dx 2F1(a, b; c; x) = (ab/c) 2F1(a+1, b+1; c+1; x)."""
    params = params.snapped()
    _check_series_domain(params, x)
    if params.a == 0.0 or params.b == 0.0:
        return 0.0
    factor = params.a * params.b / params.c
    return factor * gauss_2f1_series(params.shifted(), x)


def gauss_2f1_at_one(params: HypergeomParams) -> float:
    """Gauss's summation: 2F1(a, b; c; 1) = G(c)G(c-a-b) / (G(c-a)G(c-b)).

    The Gamma ratio is taken in log space with explicit sign tracking.

    Raises:
        DomainError: If c - a - b <= 0 or a Gamma pole is hit
    """
    params = params.snapped()
    a, b, c = params.a, params.b, params.c
    excess = c - a - b
    if excess <= 0.0:
        raise DomainError(f"2F1 at x = 1 needs c - a - b > 0, got {excess}")
    for name, value in (("c", c), ("c - a", c - a), ("c - b", c - b)):
        if is_nonpositive_integer(value):
            raise DomainError(f"{name} = {value} is a pole of the Gamma function")

    arguments = np.array([c, excess, c - a, c - b])
    signs = gammasgn(arguments)
    logs = gammaln(arguments)
    sign = float(signs[0] * signs[1] * signs[2] * signs[3])
    log_value = float(logs[0] + logs[1] - logs[2] - logs[3])
    if log_value > _LOG_FLOAT_MAX:
        return sign * math.inf
    return sign * math.exp(log_value)


def quadratic_transformation(a: float, b: float, x: float) -> Tuple[float, float]:
    """Both sides of the quadratic transformation

    2F1(a, b; 2b; 4x/(1+x)^2) = (1+x)^(2a) 2F1(a, a-b+1/2; b+1/2; x^2).

    Returns:
        Tuple[float, float]: (left-hand side, right-hand side)

    Raises:
        DomainError: If 2b is zero or a negative integer, or x is not in [0, 1)
    """
    if is_nonpositive_integer(2.0 * b):
        raise DomainError(f"2b = {2.0 * b} is zero or a negative integer")
    if not 0.0 <= x < 1.0:
        raise DomainError(f"quadratic transformation needs x in [0, 1), got {x}")
    z = 4.0 * x / (1.0 + x) ** 2
    lhs = gauss_2f1_series(HypergeomParams(a, b, 2.0 * b), z)
    rhs = (1.0 + x) ** (2.0 * a) * gauss_2f1_series(
        HypergeomParams(a, a - b + 0.5, b + 0.5), x * x
    )
    return lhs, rhs
