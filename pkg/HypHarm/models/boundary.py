"""Boundary data on the unit sphere."""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from ..errors import DomainError
from .geometry import UnitVector, check_dimension

# (m, n) array of sphere points -> (m,) or (m, d) values
Evaluator = Callable[[np.ndarray], np.ndarray]
# (k,) array of cosines <axis, zeta> -> (k,) or (k, d) values
Profile = Callable[[np.ndarray], np.ndarray]


def _as_columns(values: np.ndarray, rows: int, components: int) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.ndim <= 1:
        values = np.broadcast_to(values.reshape(-1, 1), (rows, 1))
    if values.shape != (rows, components):
        raise DomainError(
            f"boundary function returned shape {values.shape}, "
            f"expected {(rows, components)}"
        )
    return values


@dataclass(frozen=True, eq=False)
class BoundaryFunction:
    """A bounded map phi from S^{n-1} to R^d (d = 1 scalar, d = n vector).

    Zonal functions carry their ``axis`` and a ``profile`` of the cosine
    t = <axis, zeta>; they may be supported on a cap t >= ``support_min``.
    A positive ``peak_width`` marks a profile that peaks at t = 1 on that
    scale in 1 - t.
    Integrators use the profile for one-dimensional quadrature and fall back
    to ``evaluate`` for Monte Carlo.
    """

    evaluate: Evaluator
    label: str
    n: int
    components: int = 1
    axis: Optional[UnitVector] = None
    profile: Optional[Profile] = None
    support_min: float = -1.0
    peak_width: float = 0.0

    def __post_init__(self):
        check_dimension(self.n)
        if self.components < 1:
            raise DomainError("a boundary function needs at least one component")
        if (self.axis is None) != (self.profile is None):
            raise DomainError(
                "zonal boundary functions need both an axis and a profile"
            )
        if self.axis is not None and self.axis.n != self.n:
            raise DomainError(
                f"axis has dimension {self.axis.n}, expected {self.n}"
            )
        if not -1.0 <= self.support_min < 1.0:
            raise DomainError(
                f"support_min must lie in [-1, 1), got {self.support_min}"
            )
        if not self.peak_width >= 0.0:
            raise DomainError(f"peak_width must be non-negative, got {self.peak_width}")

    @property
    def is_zonal(self) -> bool:
        return self.axis is not None

    def __call__(self, zeta: UnitVector) -> np.ndarray:
        return self.evaluate_many(zeta.coords.reshape(1, -1))[0]

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at each row of ``points``; returns shape (m, components)."""
        points = np.atleast_2d(points)
        return _as_columns(self.evaluate(points), points.shape[0], self.components)

    def profile_values(self, t: np.ndarray) -> np.ndarray:
        """Evaluate the zonal profile; returns shape (k, components)."""
        if self.profile is None:
            raise DomainError(f"{self.label} is not zonal")
        t = np.asarray(t, dtype=float).reshape(-1)
        values = _as_columns(self.profile(t), t.size, self.components)
        if self.support_min > -1.0:
            values = np.where((t >= self.support_min)[:, None], values, 0.0)
        return values

    @classmethod
    def zonal(
        cls,
        axis: UnitVector,
        profile: Profile,
        label: str,
        components: int = 1,
        support_min: float = -1.0,
        peak_width: float = 0.0,
    ) -> "BoundaryFunction":
        """A function of <axis, zeta> only."""
        axis_coords = axis.coords

        def evaluate(points: np.ndarray) -> np.ndarray:
            t = points @ axis_coords
            values = _as_columns(profile(t), t.size, components)
            if support_min > -1.0:
                values = np.where((t >= support_min)[:, None], values, 0.0)
            return values

        return cls(
            evaluate=evaluate,
            label=label,
            n=axis.n,
            components=components,
            axis=axis,
            profile=profile,
            support_min=support_min,
            peak_width=peak_width,
        )

    @classmethod
    def constant(
        cls, n: int, value: Union[float, Sequence[float]] = 1.0
    ) -> "BoundaryFunction":
        """phi = C; zonal about any axis, e_n is used."""
        vector = np.atleast_1d(np.asarray(value, dtype=float))
        components = vector.size

        def profile(t: np.ndarray) -> np.ndarray:
            return np.broadcast_to(vector, (t.size, components))

        label = f"constant({vector.tolist() if components > 1 else vector[0]})"
        return cls.zonal(UnitVector.basis(n), profile, label, components=components)

    @classmethod
    def from_callable(
        cls, n: int, evaluate: Evaluator, label: str, components: int = 1
    ) -> "BoundaryFunction":
        """Arbitrary (non-zonal) data; only Monte Carlo can integrate it."""
        return cls(evaluate=evaluate, label=label, n=n, components=components)
