"""Parallel (q, |x|) sweeps of the sharp constants and bounds."""

import logging
import math
import os
from typing import List, Sequence

from ..errors import HypHarmError, ValidationError
from ..models.geometry import BallPoint, check_dimension
from ..models.params import ExponentPair
from ..models.reports import TableRow
from ..utils.workers import run_indexed
from .estimates import cq_closed_form, cq_sup, pointwise_bound, uniform_bound

logger = logging.getLogger("HypHarm.sweep")


def resolve_thread_count(configured: int = 0) -> int:
    """Worker count from the ``threads`` setting; 0 means one per CPU."""
    try:
        threads = int(configured)
    except (TypeError, ValueError):
        raise ValidationError(f"threads must be an integer, got {configured!r}")
    if threads < 0:
        raise ValidationError(f"threads must be >= 0, got {threads}")
    return threads or os.cpu_count() or 1


def table_row(n: int, q: float, radius: float) -> TableRow:
    """Constants and bounds for one grid cell.

    Failures are logged and recorded in the row's ``error`` field.
    """
    try:
        exponents = ExponentPair.from_q(q)
        x = BallPoint.from_radius(radius, n)
        return TableRow(
            n=n,
            q=exponents.q,
            p=exponents.p,
            radius=radius,
            C_q_x=cq_closed_form(exponents.q, x),
            C_q_sup=cq_sup(exponents.q, n),
            bound_pointwise=pointwise_bound(exponents, x),
            bound_uniform=uniform_bound(exponents, x),
        )
    except HypHarmError as e:
        logger.error(
            f"Sweep cell n={n} q={q} radius={radius} failed: {e}", exc_info=True
        )
        return TableRow(n, q, math.nan, radius, *(math.nan,) * 4, error=str(e))


def sweep_table(
    n: int, q_values: Sequence[float], radii: Sequence[float], threads: int = 1
) -> List[TableRow]:
    """Rows for every (q, radius) pair, q-major, in grid order for any thread count."""
    n = check_dimension(n)
    cells = [(q, radius) for q in q_values for radius in radii]
    tasks = [lambda q=q, radius=radius: table_row(n, q, radius) for q, radius in cells]
    rows = run_indexed(tasks, threads)
    logger.debug(f"Swept {len(rows)} cells for n={n} on {threads} threads")
    return rows
