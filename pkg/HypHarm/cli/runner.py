"""Execute a validated :class:`RunConfig` and serialize its report."""

import logging
import math
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict

from ..errors import HypHarmError
from ..models.params import QuadratureSpec
from ..services.estimates import (
    cq_closed_form,
    cq_integral_estimate,
    cq_sup,
    l1_bound,
    monotonicity_case,
    pointwise_bound,
    pointwise_bound_n3,
    uniform_bound,
    verify_sharpness,
)
from ..services.kernel import (
    hyperbolic_laplacian_residual,
    kernel_maximum,
    kernel_normalization_estimate,
    poisson_szego,
    suggested_step,
)
from ..services.sweep import sweep_table
from ..services.verification import SuiteOptions, run_suite
from ..utils.formatting import format_duration
from .output import render
from .run_config import RunConfig

logger = logging.getLogger("HypHarm.cli")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_FAILED = 2


@dataclass(frozen=True)
class RunResult:
    exit_code: int
    text: str


def _constant(config: RunConfig) -> Dict[str, Any]:
    x, q = config.point, config.exponents.q
    values: Dict[str, Any] = {
        "C_q_x": cq_closed_form(q, x),
        "C_q_sup": cq_sup(q, x.n),
        "monotonicity_case": monotonicity_case(q, x.n),
    }
    if q > 1.0:
        numeric, stderr = cq_integral_estimate(q, x, config.quadrature, config.threads)
        values["C_q_x_numeric"] = numeric
        values["error_estimate"] = (
            abs(numeric - values["C_q_x"]) if config.quadrature.is_zonal else stderr
        )
    return {"values": values}


def _bound(config: RunConfig) -> Dict[str, Any]:
    x, exponents = config.point, config.exponents
    values: Dict[str, Any] = {
        "pointwise_bound": pointwise_bound(exponents, x),
        "uniform_bound": uniform_bound(exponents, x),
        "l1_bound": l1_bound(x),
    }
    if not exponents.is_sup_norm:
        q, p = exponents.q, exponents.p
        values["C_q_x"] = cq_closed_form(q, x)
        values["C_q_sup"] = cq_sup(q, x.n)
        values["C_q_x_factor"] = values["C_q_x"] ** (1.0 / q)
        values["C_q_sup_factor"] = values["C_q_sup"] ** (1.0 / q)
        values["boundary_factor"] = math.exp(-(x.n - 1) / p * math.log(x.boundary_gap))
        if x.n == 3:
            values["pointwise_bound_n3"] = pointwise_bound_n3(exponents, x)
        report = verify_sharpness(
            exponents, x, config.quadrature, config.threads, config.sharpness_factor
        )
        values["sharpness"] = report.to_dict()
        values["error_estimate"] = report.quadrature_error
    return {"values": values}


def _kernel(config: RunConfig) -> Dict[str, Any]:
    x, zeta = config.point, config.zeta_vector
    estimate = kernel_normalization_estimate(x, config.quadrature, config.threads)
    values: Dict[str, Any] = {
        "P_h": poisson_szego(x, zeta),
        "kernel_maximum": kernel_maximum(x),
        "normalization": estimate.scalar,
        "normalization_residual": estimate.scalar - 1.0,
        "error_estimate": float(estimate.stderr[0]),
    }
    step = suggested_step(x, config.harmonic_step)
    if 1.0 - x.norm > 2.0 * step:
        values["laplacian_residual"] = hyperbolic_laplacian_residual(
            lambda point: poisson_szego(point, zeta), x, step
        )
        values["laplacian_step"] = step
    return {"values": values}


def _verify(config: RunConfig) -> Dict[str, Any]:
    options = SuiteOptions(
        spec=config.quadrature,
        monte_carlo=QuadratureSpec.monte_carlo(config.samples, config.seed),
        n=config.n,
        exponents=config.exponents,
        radius=config.radius,
        harmonic_step=config.harmonic_step,
        sharpness_factor=config.sharpness_factor,
        threads=config.threads,
    )
    checks = run_suite(config.suite, options)
    passed = sum(check.passed for check in checks)
    return {
        "summary": {
            "passed": passed,
            "failed": len(checks) - passed,
            "total": len(checks),
        },
        "checks": checks,
    }


def _table(config: RunConfig) -> Dict[str, Any]:
    rows = sweep_table(config.dimension, config.q_values, config.radii, config.threads)
    return {"rows": rows}


COMMAND_HANDLERS: Dict[str, Callable[[RunConfig], Dict[str, Any]]] = {
    "constant": _constant,
    "bound": _bound,
    "kernel": _kernel,
    "verify": _verify,
    "table": _table,
}


def _exit_code(report: Dict[str, Any]) -> int:
    if "checks" in report and report["summary"]["failed"]:
        return EXIT_FAILED
    if "rows" in report and any(row.error for row in report["rows"]):
        return EXIT_INVALID
    return EXIT_OK


def run(config: RunConfig) -> RunResult:
    """Run one command and serialize the report.

    Domain errors raised by the services become exit status 1 with the
    message as text; the caller decides where to print it.
    """
    started = time.perf_counter()
    try:
        body = COMMAND_HANDLERS[config.command](config)
    except HypHarmError as e:
        logger.error(f"{config.command} failed: {e}", exc_info=True)
        return RunResult(EXIT_INVALID, f"Error: {e}\n")
    elapsed = time.perf_counter() - started

    report = {"command": config.command, "inputs": config.to_dict(), **body}
    if config.quadrature.is_zonal:
        report["quadrature"] = {"method": config.method.value, "nodes": config.nodes}
    else:
        report["quadrature"] = {
            "method": config.method.value,
            "samples": config.samples,
            "seed": config.seed,
        }
    if config.timing:
        report["timing"] = {
            "wall_time_s": elapsed,
            "formatted": format_duration(elapsed),
        }

    exit_code = _exit_code(report)
    text = render(report, config.format)
    if config.output is not None:
        config.output.write_text(text)
        logger.info(f"Wrote {config.command} report to {config.output}")
    logger.debug(
        f"{config.command} finished in {elapsed:.3f}s with exit code {exit_code}"
    )
    return RunResult(exit_code, text)
