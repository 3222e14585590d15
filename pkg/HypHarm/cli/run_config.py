"""Validated configuration of a single command-line run."""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from ..errors import DomainError, ValidationError
from ..models.geometry import BallPoint, UnitVector, check_dimension
from ..models.params import ExponentPair, QuadratureMethod, QuadratureSpec
from ..services.verification import SUITE_NAMES

COMMANDS = ("constant", "bound", "kernel", "verify", "table")
FORMATS = ("json", "csv", "table")
DEFAULT_Q_VALUES = (1.25, 1.5, 2.0, 3.0, 5.0)
DEFAULT_RADII = (0.0, 0.25, 0.5, 0.75, 0.9)

# Commands that evaluate at a single ball point.
POINT_COMMANDS = ("constant", "bound", "kernel")


def _encode(value: Any) -> Any:
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, tuple):
        return [_encode(item) for item in value]
    return value


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs; :meth:`validate` is called on construction.

    The ball point is given either as ``radius`` along ``axis`` (an index,
    default e_n) or as explicit ``coords``.
    """

    command: str
    n: Optional[int] = None
    p: Optional[float] = None
    q: Optional[float] = None
    radius: Optional[float] = None
    axis: Optional[int] = None
    coords: Optional[Tuple[float, ...]] = None
    zeta: Optional[Tuple[float, ...]] = None
    method: QuadratureMethod = QuadratureMethod.ZONAL_GAUSS_LEGENDRE
    nodes: int = 200
    seed: int = 12345
    samples: int = 100_000
    format: str = "json"
    output: Optional[Path] = None
    suite: str = "all"
    q_values: Tuple[float, ...] = DEFAULT_Q_VALUES
    radii: Tuple[float, ...] = DEFAULT_RADII
    threads: int = 1
    timing: bool = False
    harmonic_step: float = 1e-3
    sharpness_factor: float = 10.0

    def __post_init__(self):
        self.validate()

    def validate(self):
        """Check cross-field constraints.

        Raises:
            ValidationError: On the first violated constraint
        """
        if self.command not in COMMANDS:
            raise ValidationError(
                f"unknown command {self.command!r}; choose from {', '.join(COMMANDS)}"
            )
        if self.format not in FORMATS:
            raise ValidationError(
                f"unknown format {self.format!r}; choose from {', '.join(FORMATS)}"
            )
        if self.suite not in SUITE_NAMES:
            raise ValidationError(
                f"unknown suite {self.suite!r}; choose from {', '.join(SUITE_NAMES)}"
            )
        if self.p is not None and self.q is not None:
            raise ValidationError("give exactly one of --p and --q, not both")
        if self.command in ("constant", "bound") and self.p is None and self.q is None:
            raise ValidationError(f"{self.command} needs one of --p or --q")
        if self.radius is not None and self.coords is not None:
            raise ValidationError("give the point as --radius or --coords, not both")
        no_point = self.radius is None and self.coords is None
        if self.command in POINT_COMMANDS and no_point:
            raise ValidationError(f"{self.command} needs --radius or --coords")
        if self.command == "verify" and self.coords is not None:
            raise ValidationError("verify focuses on a radius; use --radius")
        if self.samples < 1:
            raise ValidationError(f"samples must be >= 1, got {self.samples}")
        if self.threads < 1:
            raise ValidationError(f"threads must be >= 1, got {self.threads}")
        if not self.harmonic_step > 0.0:
            raise ValidationError(
                f"harmonic step must be positive, got {self.harmonic_step}"
            )
        if not self.sharpness_factor > 0.0:
            raise ValidationError(
                f"sharpness factor must be positive, got {self.sharpness_factor}"
            )
        if self.command == "table":
            if not self.q_values or not self.radii:
                raise ValidationError("table needs at least one q value and one radius")
            for r in self.radii:
                if not 0.0 <= r < 1.0:
                    raise ValidationError(f"radius must lie in [0, 1), got {r}")
            for q in self.q_values:
                if not 1.0 <= q < math.inf:
                    raise ValidationError(f"q must lie in [1, inf), got {q}")
        # Building the derived objects runs the model-level checks.
        try:
            check_dimension(self.dimension)
            self.exponents
            self.point
            self.zeta_vector
            self.quadrature
        except DomainError as e:
            raise ValidationError(str(e)) from e

    @property
    def dimension(self) -> int:
        """n, defaulting to 3; verify treats an unset n as "all dimensions"."""
        return 3 if self.n is None else self.n

    @property
    def exponents(self) -> Optional[ExponentPair]:
        if self.p is not None:
            return ExponentPair.from_p(self.p)
        if self.q is not None:
            return ExponentPair.from_q(self.q)
        return None

    @property
    def point(self) -> Optional[BallPoint]:
        if self.coords is not None:
            if len(self.coords) != self.dimension:
                raise DomainError(
                    f"--coords has {len(self.coords)} entries, "
                    f"expected n = {self.dimension}"
                )
            return BallPoint(self.coords)
        if self.radius is not None:
            axis = None if self.axis is None else self.axis - 1
            if axis is not None and not 0 <= axis < self.dimension:
                raise DomainError(
                    f"--axis must lie in 1..{self.dimension}, got {self.axis}"
                )
            return BallPoint.from_radius(self.radius, self.dimension, axis)
        return None

    @property
    def zeta_vector(self) -> UnitVector:
        if self.zeta is None:
            return UnitVector.basis(self.dimension)
        if len(self.zeta) != self.dimension:
            raise DomainError(
                f"--zeta has {len(self.zeta)} entries, expected {self.dimension}"
            )
        return UnitVector(self.zeta)

    @property
    def quadrature(self) -> QuadratureSpec:
        if self.method is QuadratureMethod.MONTE_CARLO:
            return QuadratureSpec.monte_carlo(self.samples, self.seed)
        return QuadratureSpec.zonal(self.nodes)

    def to_dict(self) -> Dict[str, Any]:
        """Inputs echo for reports; ``output`` and ``timing`` do not change results."""
        inputs = {
            "command": self.command,
            "n": self.n if self.command == "verify" else self.dimension,
            "method": self.method.value,
            "seed": self.seed,
        }
        if self.method is QuadratureMethod.MONTE_CARLO:
            inputs["samples"] = self.samples
        else:
            inputs["nodes"] = self.nodes
        optional = {
            "p": self.p,
            "q": self.q,
            "radius": self.radius,
            "axis": self.axis,
            "coords": self.coords,
        }
        inputs.update({k: _encode(v) for k, v in optional.items() if v is not None})
        if self.command == "kernel":
            inputs["zeta"] = self.zeta_vector.coords.tolist()
        if self.command == "verify":
            inputs["suite"] = self.suite
            inputs["samples"] = self.samples
            inputs["harmonic_step"] = self.harmonic_step
            inputs["sharpness_factor"] = self.sharpness_factor
        if self.command == "table":
            inputs["q_values"] = list(self.q_values)
            inputs["radii"] = list(self.radii)
        return inputs
