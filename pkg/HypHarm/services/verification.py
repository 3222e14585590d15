"""Named verification suites.

Each suite turns a family of analytic identities or inequalities into a list
of :class:`CheckResult` records, one per grid cell. Cells run on worker
threads and are reported in grid order.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ..errors import DomainError, HypHarmError
from ..models.boundary import BoundaryFunction
from ..models.geometry import BallPoint, UnitVector
from ..models.params import ExponentPair, HypergeomParams, QuadratureSpec
from ..models.reports import CheckResult
from ..utils.workers import run_indexed
from .estimates import (
    bound_report,
    cq_closed_form,
    cq_integral,
    cq_n3_closed_form,
    cq_radial_derivative,
    cq_sup,
    l1_extremal_sequence,
    monotonicity_case,
    verify_sharpness,
)
from .hypergeom import (
    gauss_2f1_at_one,
    gauss_2f1_derivative,
    gauss_2f1_integral,
    gauss_2f1_series,
    quadratic_transformation,
)
from .kernel import (
    HARMONIC_STEP,
    hyperbolic_laplacian_residual,
    kernel_maximum,
    kernel_normalization,
    kernel_normalization_estimate,
    poisson_szego,
)
from .sphere import uniform_sphere_array

logger = logging.getLogger("HypHarm.verification")

DIMENSIONS = (3, 4, 5)
NORMALIZATION_RADII = (0.0, 0.3, 0.6, 0.9)
CLOSED_FORM_Q = (1.1, 1.5, 2.0, 3.0, 7.0)
CLOSED_FORM_RADII = (0.0, 0.25, 0.5, 0.75, 0.95)
CLOSED_FORM_NODES = 400
N3_Q = (1.25, 1.5, 2.0, 3.0, 5.0)
N3_RADII = tuple(round(0.1 * k, 1) for k in range(1, 10))
SHARPNESS_DIMENSIONS = (3, 4)
SHARPNESS_P = (1.5, 2.0, 4.0)
SHARPNESS_RADII = (0.2, 0.5, 0.8)
MONOTONICITY_Q = (1.2, 1.5, 2.0, 5.0)
MONOTONICITY_GRID = 50
SUP_SAMPLES = 1000
LIMIT_Q = (10.0, 50.0, 200.0)
CAP_INDICES = (1, 2, 5, 10, 20, 50, 100, 200)
ENDPOINT_RADII = (0.3, 0.5, 0.7)
HARMONIC_RADII = (0.3, 0.5, 0.8)
RANDOM_BOUNDS = 100

SERIES_GRID_A = (-3.0, -1.2, 0.5, 2.0)
SERIES_GRID_B = (0.5, 1.5)
SERIES_GRID_C = (2.0, 3.5)
SERIES_GRID_X = (-0.9, -0.5, 0.0, 0.3, 0.8)
QUADRATIC_GRID_A = (-2.0, -0.5, 0.7, 1.5)
QUADRATIC_GRID_B = (0.75, 1.25, 2.0)
QUADRATIC_GRID_X = (0.1, 0.3, 0.5)
GAUSS_SUMMATION_PARAMS = ((-0.4, -1.9, 2.5), (0.5, 0.5, 3.5), (-2.0, -2.5, 1.5))

CheckTask = Callable[[], CheckResult]


@dataclass(frozen=True)
class SuiteOptions:
    """Inputs shared by the suites.

    ``n``, ``exponents`` and ``radius`` narrow the default grids to a single
    value when given.
    """

    spec: QuadratureSpec = field(default_factory=QuadratureSpec.zonal)
    monte_carlo: QuadratureSpec = field(
        default_factory=lambda: QuadratureSpec.monte_carlo(100_000, 12345)
    )
    n: Optional[int] = None
    exponents: Optional[ExponentPair] = None
    radius: Optional[float] = None
    harmonic_step: float = HARMONIC_STEP
    sharpness_factor: float = 10.0
    threads: int = 1

    def dimensions(self, default: Sequence[int] = DIMENSIONS) -> Sequence[int]:
        return (self.n,) if self.n is not None else default

    def radii(self, default: Sequence[float]) -> Sequence[float]:
        return (self.radius,) if self.radius is not None else default

    def p_values(self, default: Sequence[float]) -> Sequence[float]:
        return (self.exponents.p,) if self.exponents is not None else default

    def q_values(self, default: Sequence[float]) -> Sequence[float]:
        return (self.exponents.q,) if self.exponents is not None else default


def _check(
    suite: str, name: str, measured: float, tolerance: float, detail=None, **extra
) -> CheckResult:
    passed = math.isfinite(measured) and measured <= tolerance
    detail = {**(detail or {}), **extra}
    return CheckResult(suite, name, passed, float(measured), float(tolerance), detail)


def _guarded(suite: str, name: str, task: CheckTask) -> CheckTask:
    """Record a failed check instead of aborting the suite."""

    def run() -> CheckResult:
        try:
            return task()
        except HypHarmError as e:
            logger.error(f"Check {suite}/{name} failed: {e}", exc_info=True)
            return CheckResult(suite, name, False, math.nan, 0.0, {"error": str(e)})

    return run


def _run(suite: str, tasks: List[tuple], options: SuiteOptions) -> List[CheckResult]:
    guarded = [_guarded(suite, name, task) for name, task in tasks]
    results = run_indexed(guarded, options.threads)
    failed = sum(not result.passed for result in results)
    logger.info(f"Suite {suite}: {len(results) - failed}/{len(results)} checks passed")
    return results


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / max(abs(reference), 1e-300)


def normalization_suite(options: SuiteOptions) -> List[CheckResult]:
    """int P_h(x, .) d sigma = 1: zonal to 1e-9, Monte Carlo to 3 standard errors."""
    suite = "normalization"
    tasks = []
    for n in options.dimensions():
        for radius in options.radii(NORMALIZATION_RADII):

            def zonal(n=n, radius=radius):
                x = BallPoint.from_radius(radius, n)
                value = kernel_normalization(x, options.spec)
                return _check(
                    suite,
                    f"zonal n={n} |x|={radius:g}",
                    abs(value - 1.0),
                    1e-9,
                    value=value,
                    nodes=options.spec.nodes,
                )

            tasks.append((f"zonal n={n} |x|={radius:g}", zonal))

        def sampled(n=n):
            radius = options.radius if options.radius is not None else 0.3
            x = BallPoint.from_radius(radius, n)
            estimate = kernel_normalization_estimate(x, options.monte_carlo)
            stderr = float(estimate.stderr[0])
            return _check(
                suite,
                f"monte-carlo n={n} |x|={radius:g}",
                abs(estimate.scalar - 1.0),
                3.0 * stderr,
                value=estimate.scalar,
                stderr=stderr,
                samples=options.monte_carlo.nodes,
            )

        tasks.append((f"monte-carlo n={n}", sampled))
    return _run(suite, tasks, options)


def closed_form_suite(options: SuiteOptions) -> List[CheckResult]:
    """Numerical C_q(x) against its 2F1 closed form, and the q -> inf limit."""
    suite = "closed-form"
    nodes = max(options.spec.nodes, CLOSED_FORM_NODES)
    spec = QuadratureSpec.zonal(nodes)
    tasks = []
    for n in options.dimensions():
        for q in options.q_values(CLOSED_FORM_Q):
            if q == 1.0:
                continue
            for radius in options.radii(CLOSED_FORM_RADII):
                name = f"n={n} q={q:g} |x|={radius:g}"

                def cell(n=n, q=q, radius=radius, name=name):
                    x = BallPoint.from_radius(radius, n)
                    numeric = cq_integral(q, x, spec)
                    exact = cq_closed_form(q, x)
                    return _check(
                        suite,
                        name,
                        abs(numeric - exact) / (1.0 + exact),
                        1e-8,
                        integral=numeric,
                        closed_form=exact,
                        nodes=nodes,
                    )

                tasks.append((name, cell))

    def limit():
        # n = 3 keeps C_q(x) finite up to q = 200 for every radius
        radius = options.radius if options.radius is not None else 0.5
        x = BallPoint.from_radius(radius, 3)
        target = (1.0 + radius) ** 4
        gaps = [
            _relative(math.exp(math.log(cq_closed_form(q, x)) / q), target)
            for q in LIMIT_Q
        ]
        decreasing = all(later <= earlier for earlier, later in zip(gaps, gaps[1:]))
        return CheckResult(
            suite,
            f"q->inf limit n=3 |x|={radius:g}",
            decreasing and gaps[-1] <= 0.05,
            gaps[-1],
            0.05,
            {"q": list(LIMIT_Q), "relative_gaps": gaps},
        )

    tasks.append(("q->inf limit", limit))
    return _run(suite, tasks, options)


def n3_suite(options: SuiteOptions) -> List[CheckResult]:
    """Explicit three-dimensional formula against the 2F1 form, plus anchors."""
    suite = "n3"
    tasks = []
    for q in options.q_values(N3_Q):
        if q == 1.0:
            continue
        for rho in options.radii(N3_RADII):
            name = f"q={q:g} rho={rho:g}"

            def cell(q=q, rho=rho, name=name):
                explicit = cq_n3_closed_form(q, rho)
                exact = cq_closed_form(q, BallPoint.from_radius(rho, 3))
                return _check(
                    suite,
                    name,
                    _relative(explicit, exact),
                    1e-10,
                    explicit=explicit,
                    closed_form=exact,
                )

            tasks.append((name, cell))

    def anchor_half():
        value = cq_closed_form(2.0, BallPoint.from_radius(0.5, 3))
        error = abs(value - 91.0 / 48.0)
        return _check(suite, "C_2(0.5 e_3)", error, 1e-12, value=value)

    def anchor_sup():
        values = (cq_sup(2.0, 3), cq_n3_closed_form(2.0, 1.0))
        error = max(abs(value - 16.0 / 3.0) for value in values)
        return _check(
            suite, "C_2(e_3)", error, 1e-12, sup=values[0], explicit=values[1]
        )

    tasks += [("C_2(0.5 e_3)", anchor_half), ("C_2(e_3)", anchor_sup)]
    return _run(suite, tasks, options)


def sharpness_suite(options: SuiteOptions) -> List[CheckResult]:
    """phi* = P_h(x, .)^{q-1} turns the pointwise bound into an equality."""
    suite = "sharpness"
    tasks = []
    for n in options.dimensions(SHARPNESS_DIMENSIONS):
        for p in options.p_values(SHARPNESS_P):
            if math.isinf(p):
                continue
            for radius in options.radii(SHARPNESS_RADII):
                name = f"n={n} p={p:g} |x|={radius:g}"

                def cell(n=n, p=p, radius=radius, name=name):
                    report = verify_sharpness(
                        ExponentPair.from_p(p),
                        BallPoint.from_radius(radius, n),
                        options.spec,
                        1,
                        options.sharpness_factor,
                    )
                    tolerance = max(report.tolerance, 1e-8)
                    return _check(
                        suite,
                        name,
                        abs(report.ratio - 1.0),
                        tolerance,
                        report.to_dict(),
                    )

                tasks.append((name, cell))
    return _run(suite, tasks, options)


def monotonicity_suite(options: SuiteOptions) -> List[CheckResult]:
    """rho -> C_q(rho e_n) is nondecreasing with sup C_q(e_n), on both sides
    of q = 1 + 1/(n-1)."""
    suite = "monotonicity"
    grid = np.arange(MONOTONICITY_GRID) / MONOTONICITY_GRID
    tasks = []
    for n in options.dimensions():
        cases = set()
        for q in options.q_values(MONOTONICITY_Q):
            if q == 1.0:
                continue
            cases.add(monotonicity_case(q, n))
            label = f"n={n} q={q:g}"

            def nondecreasing(n=n, q=q, label=label):
                values = np.array(
                    [cq_closed_form(q, BallPoint.from_radius(rho, n)) for rho in grid]
                )
                slopes = [cq_radial_derivative(q, n, rho) for rho in grid]
                drops = np.maximum(values[:-1] - values[1:], 0.0) / values[1:]
                drop = float(np.max(drops))
                drop = max(drop, -min(min(slopes), 0.0))
                return _check(
                    suite,
                    f"nondecreasing {label}",
                    drop,
                    1e-12,
                    case=monotonicity_case(q, n),
                    minimum_slope=min(slopes),
                )

            def below_sup(n=n, q=q, label=label):
                sup = cq_sup(q, n)
                rng = np.random.default_rng(options.monte_carlo.seed)
                radii = rng.random(SUP_SAMPLES) ** (1.0 / n)
                radii = np.minimum(radii, 1.0 - 1e-9)
                worst = max(
                    cq_closed_form(q, BallPoint.from_radius(r, n)) for r in radii
                )
                return _check(
                    suite,
                    f"below sup {label}",
                    max(worst / sup - 1.0, 0.0),
                    1e-12,
                    sup=sup,
                    largest=worst,
                    samples=SUP_SAMPLES,
                )

            def endpoint(n=n, q=q, label=label):
                sup = cq_sup(q, n)
                near = [BallPoint.from_radius(1.0 - 10.0**-k, n) for k in range(2, 7)]
                gaps = [_relative(cq_closed_form(q, x), sup) for x in near]
                decreasing = all(
                    later <= earlier for earlier, later in zip(gaps, gaps[1:])
                )
                return CheckResult(
                    suite,
                    f"endpoint continuity {label}",
                    decreasing and gaps[-1] <= 1e-4,
                    gaps[-1],
                    1e-4,
                    {"relative_gaps": gaps},
                )

            tasks += [
                (f"nondecreasing {label}", nondecreasing),
                (f"below sup {label}", below_sup),
                (f"endpoint continuity {label}", endpoint),
            ]

        if options.exponents is None:

            def both_cases(n=n, cases=frozenset(cases)):
                return CheckResult(
                    suite,
                    f"both cases n={n}",
                    cases == {"subcritical", "supercritical"},
                    float(len(cases)),
                    2.0,
                    {"cases": sorted(cases)},
                )

            tasks.append((f"both cases n={n}", both_cases))
    return _run(suite, tasks, options)


def hypergeom_suite(options: SuiteOptions) -> List[CheckResult]:
    """Series against integral, the derivative formula, the quadratic
    transformation and Gauss's summation."""
    suite = "hypergeom"
    tasks = []
    for a in SERIES_GRID_A:
        for b in SERIES_GRID_B:
            for c in SERIES_GRID_C:
                params = HypergeomParams(a, b, c)
                for x in SERIES_GRID_X:
                    label = f"({a:g}, {b:g}; {c:g}; {x:g})"

                    def integral(params=params, x=x, label=label):
                        series = gauss_2f1_series(params, x)
                        value = gauss_2f1_integral(params, x)
                        return _check(
                            suite,
                            f"integral {label}",
                            abs(series - value) / (1.0 + abs(series)),
                            1e-9,
                            series=series,
                            integral=value,
                        )

                    def derivative(params=params, x=x, label=label):
                        h = 1e-5
                        forward = gauss_2f1_series(params, x + h)
                        backward = gauss_2f1_series(params, x - h)
                        numeric = (forward - backward) / (2.0 * h)
                        value = gauss_2f1_derivative(params, x)
                        return _check(
                            suite,
                            f"derivative {label}",
                            abs(numeric - value),
                            1e-6,
                            formula=value,
                            finite_difference=numeric,
                        )

                    tasks += [
                        (f"integral {label}", integral),
                        (f"derivative {label}", derivative),
                    ]

    for a in QUADRATIC_GRID_A:
        for b in QUADRATIC_GRID_B:
            for x in QUADRATIC_GRID_X:
                label = f"a={a:g} b={b:g} x={x:g}"

                def quadratic(a=a, b=b, x=x, label=label):
                    lhs, rhs = quadratic_transformation(a, b, x)
                    return _check(
                        suite,
                        f"quadratic {label}",
                        _relative(lhs, rhs),
                        1e-9,
                        lhs=lhs,
                        rhs=rhs,
                    )

                tasks.append((f"quadratic {label}", quadratic))

    for a, b, c in GAUSS_SUMMATION_PARAMS:
        label = f"({a:g}, {b:g}; {c:g})"

        def summation(params=HypergeomParams(a, b, c), label=label):
            closed = gauss_2f1_at_one(params)
            near = gauss_2f1_series(params, 1.0 - 1e-6)
            return _check(
                suite,
                f"gauss summation {label}",
                _relative(near, closed),
                1e-4,
                at_one=closed,
                series_near_one=near,
            )

        tasks.append((f"gauss summation {label}", summation))
    return _run(suite, tasks, options)


def harmonicity_suite(options: SuiteOptions) -> List[CheckResult]:
    """Finite-difference Delta_h of P_h(., zeta) vanishes to second order.

    x lies on the e_n axis and zeta = e_1, so |x - zeta| >= 1 and the kernel
    varies on a unit scale.
    """
    suite = "harmonicity"
    h = options.harmonic_step
    tasks = []
    for n in options.dimensions():
        zeta = UnitVector.basis(n, 0)

        def kernel(point: BallPoint, zeta=zeta) -> float:
            return poisson_szego(point, zeta)

        for radius in options.radii(HARMONIC_RADII):
            name = f"residual n={n} |x|={radius:g}"

            def residual(n=n, radius=radius, kernel=kernel, name=name):
                x = BallPoint.from_radius(radius, n)
                value = hyperbolic_laplacian_residual(kernel, x, h)
                peak = kernel(x)
                tolerance = 1e-4 * (1.0 + abs(peak))
                detail = {"residual": value, "kernel": peak, "step": h}
                return _check(suite, name, abs(value), tolerance, detail)

            tasks.append((name, residual))

        def order(n=n, kernel=kernel):
            x = BallPoint.from_radius(0.8, n)
            coarse = hyperbolic_laplacian_residual(kernel, x, h)
            fine = hyperbolic_laplacian_residual(kernel, x, h / 2.0)
            ratio = abs(coarse / fine) if fine != 0.0 else math.inf
            return CheckResult(
                suite,
                f"second order n={n}",
                3.5 <= ratio <= 4.5,
                ratio,
                0.5,
                {"coarse": coarse, "fine": fine, "step": h},
            )

        tasks.append((f"second order n={n}", order))
    return _run(suite, tasks, options)


def endpoint_suite(options: SuiteOptions) -> List[CheckResult]:
    """p = 1: normalized cap indicators increase to max P_h(x0, .); p = inf:
    constants attain the bound 1."""
    suite = "endpoint"
    tasks = []
    for n in options.dimensions((3,)):
        eta0 = UnitVector.basis(n)
        for radius in options.radii(ENDPOINT_RADII):
            name = f"cap sequence n={n} |x0|={radius:g}"

            def caps(n=n, radius=radius, eta0=eta0, name=name):
                x0 = BallPoint.from_radius(radius, n)
                values = [
                    l1_extremal_sequence(x0, eta0, i, options.spec) for i in CAP_INDICES
                ]
                limit = kernel_maximum(x0)
                pairs = zip(values, values[1:])
                increasing = all(later >= earlier - 1e-12 for earlier, later in pairs)
                gap = _relative(values[-1], limit)
                return CheckResult(
                    suite,
                    name,
                    increasing and gap <= 0.01,
                    gap,
                    0.01,
                    {"indices": list(CAP_INDICES), "values": values, "limit": limit},
                )

            tasks.append((name, caps))

        def sup_norm(n=n):
            radius = 0.5 if options.radius is None else options.radius
            report = bound_report(
                BoundaryFunction.constant(n, 2.0),
                ExponentPair.from_p(math.inf),
                BallPoint.from_radius(radius, n),
                options.spec,
            )
            return _check(
                suite,
                f"sup norm n={n}",
                abs(report.ratio - 1.0),
                max(report.tolerance, 1e-9),
                report.to_dict(),
            )

        tasks.append((f"sup norm n={n}", sup_norm))
    return _run(suite, tasks, options)


def random_boundary_function(
    n: int, seed: int, components: int = 2
) -> BoundaryFunction:
    """A smooth bounded non-zonal map: a sum of three von Mises bumps."""
    rng = np.random.default_rng(seed)
    centers = uniform_sphere_array(n, 3, seed)
    weights = rng.standard_normal((3, components))
    concentrations = rng.uniform(0.5, 4.0, 3)

    def evaluate(points: np.ndarray) -> np.ndarray:
        bumps = np.exp(concentrations * (points @ centers.T - 1.0))
        return bumps @ weights

    label = f"random(seed={seed})"
    return BoundaryFunction.from_callable(n, evaluate, label, components)


def bound_suite(options: SuiteOptions) -> List[CheckResult]:
    """Random bounded phi never beat the pointwise bound beyond 5 standard errors."""
    suite = "bound"
    spec = options.monte_carlo
    rng = np.random.default_rng(spec.seed)
    tasks = []
    for index in range(RANDOM_BOUNDS):
        n = options.n or int(rng.choice(DIMENSIONS))
        p = options.exponents.p if options.exponents else float(rng.uniform(1.1, 6.0))
        radius = options.radius
        if radius is None:
            radius = float(rng.uniform(0.0, 0.9))
        axis = UnitVector(rng.standard_normal(n))
        seed = int(rng.integers(2**63))
        name = f"random #{index} n={n} p={p:.4g} |x|={radius:.4g}"

        def cell(n=n, p=p, radius=radius, axis=axis, seed=seed, name=name):
            report = bound_report(
                random_boundary_function(n, seed),
                ExponentPair.from_p(p),
                BallPoint.from_radius(radius, n, axis),
                spec,
                tolerance_factor=5.0,
            )
            return CheckResult(
                suite,
                name,
                report.holds,
                report.ratio,
                1.0 + report.tolerance,
                report.to_dict(),
            )

        tasks.append((name, cell))
    return _run(suite, tasks, options)


SUITES: Dict[str, Callable[[SuiteOptions], List[CheckResult]]] = {
    "normalization": normalization_suite,
    "closed-form": closed_form_suite,
    "n3": n3_suite,
    "sharpness": sharpness_suite,
    "monotonicity": monotonicity_suite,
    "hypergeom": hypergeom_suite,
    "harmonicity": harmonicity_suite,
    "endpoint": endpoint_suite,
    "bound": bound_suite,
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name: str, options: Optional[SuiteOptions] = None) -> List[CheckResult]:
    """Run one suite, or every suite in order for ``"all"``.

    Raises:
        DomainError: If the suite name is unknown
    """
    options = options or SuiteOptions()
    if name == "all":
        results = []
        for suite in SUITES.values():
            results.extend(suite(options))
        return results
    if name not in SUITES:
        raise DomainError(
            f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}"
        )
    return SUITES[name](options)
