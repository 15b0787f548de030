"""Value types shared across the package and the sign-vertex encoding.

A vertex of the cube {-1, +1}^n is stored as an n-bit mask: bit i clear means
coordinate i+1 is +1, bit i set means it is -1.  Mask 0 is the all-plus vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

NORM_TOL = 1e-12
MAX_DIMS = 62  # counts and masks must fit a signed 64-bit integer


class InvalidInputError(ValueError):
    pass


class CapacityError(ValueError):
    """Dimension exceeds what the requested counting mode supports."""


class ExactOverflowError(ArithmeticError):
    """Integer weights too large for the fixed-width exact kernel."""


class EmptyHalfSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[float, ...]
    normalized: bool = False

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise InvalidInputError("weight vector must have at least one entry")
        if not all(math.isfinite(x) for x in w):
            raise InvalidInputError(f"non-finite weight in {w}")
        if self.normalized and abs(math.fsum(x * x for x in w) - 1.0) > NORM_TOL:
            raise InvalidInputError("vector flagged normalized but sum of squares != 1")

    @property
    def dims(self) -> int:
        return len(self.weights)

    def as_array(self) -> np.ndarray:
        return np.array(self.weights, dtype=np.float64)

    def norm(self) -> float:
        return math.hypot(*self.weights)


@dataclass(frozen=True)
class IntWeightVector:
    """Integer normal b standing for the unit direction b / |b|."""

    weights: tuple[int, ...]
    norm_sq: int = field(init=False)

    def __post_init__(self):
        w = []
        for x in self.weights:
            if isinstance(x, bool) or int(x) != x:
                raise InvalidInputError(f"exact mode needs integer weights, got {x!r}")
            w.append(int(x))
        if not w:
            raise InvalidInputError("weight vector must have at least one entry")
        if not any(w):
            raise InvalidInputError("integer weight vector is all zeros")
        object.__setattr__(self, "weights", tuple(w))
        object.__setattr__(self, "norm_sq", sum(x * x for x in w))

    @property
    def dims(self) -> int:
        return len(self.weights)

    def to_unit(self) -> WeightVector:
        return normalize(self.weights)


Normal = Union[WeightVector, IntWeightVector]


@dataclass(frozen=True)
class SignVertex:
    dims: int
    mask: int

    def __post_init__(self):
        if not 1 <= self.dims <= MAX_DIMS:
            raise InvalidInputError(f"dims must be in [1, {MAX_DIMS}], got {self.dims}")
        if not 0 <= self.mask < (1 << self.dims):
            raise InvalidInputError(f"mask {self.mask} out of range for n={self.dims}")

    def signs(self) -> tuple[int, ...]:
        return vertex_decode(self.mask, self.dims)


@dataclass(frozen=True)
class PlankCount:
    dims: int
    inside: int
    boundary: int
    outside: int
    tol: float

    @property
    def satisfied(self) -> int:
        return self.inside + self.boundary

    @property
    def total(self) -> int:
        return 1 << self.dims

    @property
    def ratio(self) -> float:
        return self.satisfied / self.total


@dataclass(frozen=True)
class HalfSpaceCount:
    dims: int
    strict_interior: int
    boundary: int
    tol: float

    @property
    def closed(self) -> int:
        return self.strict_interior + self.boundary


@dataclass(frozen=True)
class CentroidWitness:
    w: tuple[int, ...]
    k: int
    w_norm: float
    dot: float
    holds: bool


@dataclass(frozen=True)
class BoundReport:
    dims: int
    satisfied: int
    strict_interior: int
    theorem1_bound: float
    lemma1_bound: float
    ratio: float
    pass_theorem1: bool
    pass_lemma1: bool
    pass_tomaszewski: bool


@dataclass(frozen=True)
class SearchResult:
    best: WeightVector
    satisfied: int
    ratio: float
    restarts_used: int
    rng_seed: int
    evaluations: int
    best_restart: int = 0
    exact_weights: tuple[int, ...] | None = None


def normalize(weights: Sequence[float]) -> WeightVector:
    w = [float(x) for x in weights]
    if not w:
        raise InvalidInputError("empty weight list")
    if not all(math.isfinite(x) for x in w):
        raise InvalidInputError(f"non-finite weight in {w}")
    norm = math.hypot(*w)
    if norm == 0.0:
        raise InvalidInputError("cannot normalize the zero vector")
    unit = [x / norm for x in w]
    # one rescale with the exact sum of squares absorbs the division rounding
    unit = [x / math.sqrt(math.fsum(y * y for y in unit)) for x in unit]
    return WeightVector(tuple(unit), normalized=True)


def vertex_decode(mask: int, n: int) -> tuple[int, ...]:
    if not 1 <= n <= MAX_DIMS:
        raise InvalidInputError(f"n must be in [1, {MAX_DIMS}], got {n}")
    if not 0 <= mask < (1 << n):
        raise InvalidInputError(f"mask {mask} out of range for n={n}")
    return tuple(-1 if (mask >> i) & 1 else 1 for i in range(n))


def vertex_encode(signs: Sequence[int]) -> SignVertex:
    mask = 0
    for i, e in enumerate(signs):
        if e == -1:
            mask |= 1 << i
        elif e != 1:
            raise InvalidInputError(f"sign entries must be +1 or -1, got {e!r}")
    return SignVertex(len(signs), mask)


def antipode(v: SignVertex) -> SignVertex:
    return SignVertex(v.dims, v.mask ^ ((1 << v.dims) - 1))
