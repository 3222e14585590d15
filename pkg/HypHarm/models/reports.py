"""Result records produced by the services and serialized by the CLI."""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from .geometry import BallPoint
from .params import ExponentPair, QuadratureMethod

# Floor for the tolerance of a sharpness check so that an exact quadrature
# (zero measured error) still leaves room for rounding.
MIN_QUADRATURE_ERROR = 1e-13
# Ceiling on the tolerance; a larger error leaves the check unresolved.
MAX_TOLERANCE = 0.05


@dataclass(frozen=True, eq=False)
class IntegralEstimate:
    """Componentwise value of a surface integral with its standard error.

    ``stderr`` is zero for the deterministic zonal rules.
    """

    value: np.ndarray
    stderr: np.ndarray
    method: QuadratureMethod
    evaluations: int

    @property
    def magnitude(self) -> float:
        """Euclidean norm of the component integrals."""
        return float(np.linalg.norm(self.value))

    @property
    def magnitude_stderr(self) -> float:
        """Standard error of the magnitude (first-order propagation)."""
        norm = self.magnitude
        if norm == 0.0:
            return float(np.linalg.norm(self.stderr))
        return float(np.sqrt(np.sum((self.value * self.stderr) ** 2)) / norm)

    @property
    def scalar(self) -> float:
        return float(self.value[0])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value.tolist(),
            "stderr": self.stderr.tolist(),
            "method": self.method.value,
            "evaluations": self.evaluations,
        }


@dataclass(frozen=True)
class SharpnessReport:
    """Comparison of |u(x)| against the pointwise bound times ||phi||_p."""

    x: BallPoint
    exponents: ExponentPair
    lhs: float
    rhs: float
    ratio: float
    quadrature_error: float
    label: str = ""
    tolerance_factor: float = 10.0

    @property
    def _scaled_error(self) -> float:
        return self.tolerance_factor * max(self.quadrature_error, MIN_QUADRATURE_ERROR)

    @property
    def tolerance(self) -> float:
        return min(self._scaled_error, MAX_TOLERANCE)

    @property
    def resolved(self) -> bool:
        """The quadrature is accurate enough for the tolerance to apply uncapped."""
        return self._scaled_error <= MAX_TOLERANCE

    @property
    def holds(self) -> bool:
        """The inequality is not violated beyond the quadrature tolerance."""
        return self.ratio <= 1.0 + self.tolerance

    @property
    def sharp(self) -> bool:
        """Equality is attained within the quadrature tolerance."""
        return abs(self.ratio - 1.0) <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "x": self.x.to_dict(),
            "exponents": self.exponents.to_dict(),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "quadrature_error": self.quadrature_error,
            "tolerance": self.tolerance,
            "resolved": self.resolved,
            "holds": self.holds,
            "sharp": self.sharp,
        }


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verification check."""

    suite: str
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "name": self.name,
            "passed": self.passed,
            "measured": _json_float(self.measured),
            "tolerance": _json_float(self.tolerance),
            "detail": self.detail,
        }


@dataclass(frozen=True)
class TableRow:
    """One (q, |x|) cell of a sweep table."""

    n: int
    q: float
    p: float
    radius: float
    C_q_x: float
    C_q_sup: float
    bound_pointwise: float
    bound_uniform: float
    error: Optional[str] = None

    COLUMNS = (
        "n",
        "q",
        "p",
        "radius",
        "C_q_x",
        "C_q_sup",
        "bound_pointwise",
        "bound_uniform",
    )

    def values(self) -> tuple:
        return tuple(getattr(self, column) for column in self.COLUMNS)

    def to_dict(self) -> Dict[str, Any]:
        row = {column: _json_float(getattr(self, column)) for column in self.COLUMNS}
        if self.error:
            row["error"] = self.error
        return row


def _json_float(value: Any) -> Any:
    """JSON has no infinities or NaN; encode them as strings."""
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else ("-inf" if value < 0 else "nan")
    return value
