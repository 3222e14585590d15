"""Points on the unit sphere and in the unit ball."""

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from ..errors import DomainError

MIN_DIMENSION = 3
UNIT_TOLERANCE = 1e-12
BOUNDARY_MARGIN = 1e-15


def _as_coords(coords: Union[Sequence[float], np.ndarray]) -> np.ndarray:
    arr = np.array(coords, dtype=float).reshape(-1)
    if arr.size < MIN_DIMENSION:
        raise DomainError(f"dimension must be at least {MIN_DIMENSION}, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("coordinates must be finite")
    return arr


def check_dimension(n: int) -> int:
    """Validate a dimension argument and return it as int."""
    if int(n) != n or n < MIN_DIMENSION:
        raise DomainError(f"dimension must be an integer >= {MIN_DIMENSION}, got {n}")
    return int(n)


@dataclass(frozen=True, eq=False)
class UnitVector:
    """A point on the unit sphere S^{n-1}; the constructor normalizes."""

    coords: np.ndarray

    def __post_init__(self):
        arr = _as_coords(self.coords)
        norm = float(np.linalg.norm(arr))
        if norm == 0.0:
            raise DomainError("cannot normalize the zero vector")
        arr = arr / norm
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @classmethod
    def basis(cls, n: int, index: Optional[int] = None) -> "UnitVector":
        """The coordinate vector e_{index}; defaults to e_n (last axis)."""
        n = check_dimension(n)
        index = n - 1 if index is None else index
        if not 0 <= index < n:
            raise DomainError(f"axis index {index} out of range for n = {n}")
        coords = np.zeros(n)
        coords[index] = 1.0
        return cls(coords)

    @property
    def n(self) -> int:
        return self.coords.size

    def dot(self, other: Union["UnitVector", "BallPoint", np.ndarray]) -> float:
        other_coords = getattr(other, "coords", other)
        return float(np.dot(self.coords, other_coords))

    def __repr__(self) -> str:
        return f"UnitVector({self.coords.tolist()})"


@dataclass(frozen=True, eq=False)
class BallPoint:
    """A point x of the open unit ball B^n, |x| < 1."""

    coords: np.ndarray

    def __post_init__(self):
        arr = _as_coords(self.coords)
        if float(np.linalg.norm(arr)) >= 1.0 - BOUNDARY_MARGIN:
            raise DomainError(
                f"|x| = {np.linalg.norm(arr)!r} is not strictly inside the unit ball"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @classmethod
    def from_radius(
        cls,
        radius: float,
        n: int,
        axis: Union[int, UnitVector, None] = None,
    ) -> "BallPoint":
        """Build radius * axis; axis is an index or a unit vector, default e_n."""
        n = check_dimension(n)
        if not (0.0 <= radius < 1.0):
            raise DomainError(f"radius must lie in [0, 1), got {radius}")
        direction = axis if isinstance(axis, UnitVector) else UnitVector.basis(n, axis)
        if direction.n != n:
            raise DomainError(f"axis has dimension {direction.n}, expected {n}")
        return cls(radius * direction.coords)

    @classmethod
    def origin(cls, n: int) -> "BallPoint":
        return cls(np.zeros(check_dimension(n)))

    @property
    def n(self) -> int:
        return self.coords.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    @property
    def norm_squared(self) -> float:
        return float(np.dot(self.coords, self.coords))

    @property
    def boundary_gap(self) -> float:
        """1 - |x|^2, computed as (1 - |x|)(1 + |x|)."""
        r = self.norm
        return (1.0 - r) * (1.0 + r)

    @property
    def is_origin(self) -> bool:
        return self.norm == 0.0

    @property
    def direction(self) -> Optional[UnitVector]:
        """x / |x|, or None at the origin."""
        return None if self.is_origin else UnitVector(self.coords)

    def rotated(self, matrix: np.ndarray) -> "BallPoint":
        return BallPoint(np.asarray(matrix) @ self.coords)

    def to_dict(self) -> dict:
        return {"coords": self.coords.tolist(), "radius": self.norm}

    def __repr__(self) -> str:
        return f"BallPoint({self.coords.tolist()})"
