"""Parameter types: hypergeometric parameters, exponents and quadrature specs."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..errors import DomainError
from ..utils.numeric import is_nonpositive_integer, snap_integer

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class HypergeomParams:
    """The (a, b; c) parameters of the Gauss hypergeometric function."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"hypergeometric parameter {name} must be finite")
        if is_nonpositive_integer(self.c):
            raise DomainError(
                f"c = {self.c} is zero or a negative integer; 2F1 is undefined"
            )

    @property
    def terminating(self) -> bool:
        """True when a or b is a nonpositive integer (the series is a polynomial)."""
        return is_nonpositive_integer(self.a) or is_nonpositive_integer(self.b)

    @property
    def degree(self) -> Optional[int]:
        """Polynomial degree of a terminating series, None otherwise."""
        degrees = [
            -int(round(v)) for v in (self.a, self.b) if is_nonpositive_integer(v)
        ]
        return min(degrees) if degrees else None

    @property
    def excess(self) -> float:
        """c - a - b; the series converges absolutely at |x| = 1 iff positive."""
        return self.c - self.a - self.b

    def snapped(self) -> "HypergeomParams":
        """Return a copy with near-integer a and b replaced by exact integers."""
        return HypergeomParams(snap_integer(self.a), snap_integer(self.b), self.c)

    def shifted(self) -> "HypergeomParams":
        """Parameters (a+1, b+1; c+1) of the derivative series."""
        return HypergeomParams(self.a + 1.0, self.b + 1.0, self.c + 1.0)


class QuadratureMethod(str, Enum):
    """Integration strategy on the sphere."""

    ZONAL_GAUSS_LEGENDRE = "zonal"
    MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class QuadratureSpec:
    """Integration strategy, node/sample count and seed.

    For the zonal method ``nodes`` is the number of quadrature nodes in the
    polar variable; for Monte Carlo it is the number of samples.
    """

    method: QuadratureMethod = QuadratureMethod.ZONAL_GAUSS_LEGENDRE
    nodes: int = 200
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "method", QuadratureMethod(self.method))
        minimum = 2 if self.is_zonal else 1
        if int(self.nodes) != self.nodes or self.nodes < minimum:
            raise DomainError(
                f"{self.method.value} quadrature needs at least {minimum} nodes, "
                f"got {self.nodes}"
            )
        if not 0 <= int(self.seed) <= MAX_SEED:
            raise DomainError(
                f"seed must be a 64-bit unsigned integer, got {self.seed}"
            )
        object.__setattr__(self, "nodes", int(self.nodes))
        object.__setattr__(self, "seed", int(self.seed))

    @classmethod
    def zonal(cls, nodes: int = 200) -> "QuadratureSpec":
        return cls(QuadratureMethod.ZONAL_GAUSS_LEGENDRE, nodes)

    @classmethod
    def monte_carlo(cls, samples: int = 100_000, seed: int = 0) -> "QuadratureSpec":
        return cls(QuadratureMethod.MONTE_CARLO, samples, seed)

    @property
    def is_zonal(self) -> bool:
        return self.method is QuadratureMethod.ZONAL_GAUSS_LEGENDRE


@dataclass(frozen=True)
class ExponentPair:
    """Conjugate Hölder exponents with p in (1, inf] and 1/p + 1/q = 1.

    Build with :meth:`from_p` or :meth:`from_q`; ``p = math.inf`` pairs with
    ``q = 1``.
    """

    p: float
    q: float

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        if not (p > 1.0):
            raise DomainError(f"p must lie in (1, inf], got {p}")
        if not (1.0 <= q < math.inf):
            raise DomainError(f"q must lie in [1, inf), got {q}")
        inv_p = 0.0 if math.isinf(p) else 1.0 / p
        if abs(inv_p + 1.0 / q - 1.0) > 1e-12:
            raise DomainError(f"p = {p} and q = {q} are not conjugate exponents")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def from_p(cls, p: float) -> "ExponentPair":
        p = float(p)
        if not (p > 1.0):
            raise DomainError(f"p must lie in (1, inf], got {p}")
        q = 1.0 if math.isinf(p) else p / (p - 1.0)
        return cls(p, q)

    @classmethod
    def from_q(cls, q: float) -> "ExponentPair":
        q = float(q)
        if not (1.0 <= q < math.inf):
            raise DomainError(f"q must lie in [1, inf), got {q}")
        p = math.inf if q == 1.0 else q / (q - 1.0)
        return cls(p, q)

    @property
    def is_sup_norm(self) -> bool:
        """True for the endpoint pair (inf, 1)."""
        return math.isinf(self.p)

    def to_dict(self) -> dict:
        return {"p": "inf" if self.is_sup_norm else self.p, "q": self.q}
