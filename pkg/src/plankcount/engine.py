"""Exact enumeration of cube vertices against planks and tangent half-spaces.

Every counter visits all 2^n sign vectors.  Float mode classifies s = <eps, u>
with a band of half-width ``tol`` around |s| = 1; exact mode works on an
integer normal b and compares <eps, b>^2 with |b|^2.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .core import (
    MAX_DIMS,
    CapacityError,
    ExactOverflowError,
    HalfSpaceCount,
    IntWeightVector,
    InvalidInputError,
    Normal,
    PlankCount,
    WeightVector,
)

NAIVE_MAX_DIMS = 26
EXACT_MAX_DIMS = 34
BIGINT_MAX_DIMS = 20
_INT64_MAX = (1 << 63) - 1


@dataclass(frozen=True)
class EnumConfig:
    tol: float = 1e-9
    reanchor_period: int = 1 << 20
    chunk_bits: int = 0

    def __post_init__(self):
        if not 0.0 <= self.tol < 1.0:
            raise InvalidInputError(f"tol must lie in [0, 1), got {self.tol}")
        if self.reanchor_period < 1:
            raise InvalidInputError("reanchor_period must be positive")
        if self.chunk_bits < 0:
            raise InvalidInputError("chunk_bits must be nonnegative")

    @property
    def lo(self) -> float:
        return 1.0 - self.tol

    @property
    def hi(self) -> float:
        return 1.0 + self.tol


DEFAULT_CONFIG = EnumConfig()


@dataclass(frozen=True)
class Tally:
    """Raw five-way split of one enumeration; plank and half-space counts derive from it."""

    dims: int
    inside: int
    out_pos: int
    out_neg: int
    closed_pos: int
    tol: float

    def plank(self) -> PlankCount:
        total = 1 << self.dims
        outside = self.out_pos + self.out_neg
        return PlankCount(self.dims, self.inside, total - self.inside - outside, outside, self.tol)

    def halfspace(self) -> HalfSpaceCount:
        return HalfSpaceCount(self.dims, self.out_pos, self.closed_pos - self.out_pos, self.tol)

    def __add__(self, other: "Tally") -> "Tally":
        return Tally(
            self.dims,
            self.inside + other.inside,
            self.out_pos + other.out_pos,
            self.out_neg + other.out_neg,
            self.closed_pos + other.closed_pos,
            self.tol,
        )


def _check_dims(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise CapacityError(f"{what} supports n <= {limit}, got n={n}")


def _float_weights(u: WeightVector) -> np.ndarray:
    if not u.normalized:
        raise InvalidInputError("float-mode counting needs a normalized WeightVector")
    return u.as_array()


def _int_weights(b: IntWeightVector) -> np.ndarray:
    """int64 copy of b, or ExactOverflowError if <eps, b>^2 could overflow."""
    s_max = sum(abs(x) for x in b.weights)
    if s_max * s_max > _INT64_MAX:
        raise ExactOverflowError(
            f"sum of |b_i| = {s_max} is too large for 64-bit squared sums"
        )
    return np.array(b.weights, dtype=np.int64)


def _bigint_tally(b: IntWeightVector) -> Tally:
    n = b.dims
    _check_dims(n, BIGINT_MAX_DIMS, "arbitrary-precision exact mode")
    inside = out_pos = out_neg = closed = 0
    for signs in itertools.product((1, -1), repeat=n):
        s = sum(e * x for e, x in zip(signs, b.weights))
        sq = s * s
        inside += sq < b.norm_sq
        out_pos += s > 0 and sq > b.norm_sq
        out_neg += s < 0 and sq > b.norm_sq
        closed += s > 0 and sq >= b.norm_sq
    return Tally(n, inside, out_pos, out_neg, closed, 0.0)


def _tally_from(n: int, raw, tol: float) -> Tally:
    return Tally(n, *(int(x) for x in raw), tol)


def _chunk_tally(normal: Normal, cfg: EnumConfig, chunk_bits: int, chunk: int) -> Tally:
    n = normal.dims
    m = n - chunk_bits
    if isinstance(normal, IntWeightVector):
        w = _int_weights(normal)
        base = K._int_sum(w[m:], np.int64(0), chunk_bits, np.int64(chunk))
        raw = K.gray_exact(w[:m].copy(), base, m, np.int64(normal.norm_sq), K.TRAILING_ZEROS)
        return _tally_from(n, raw, 0.0)
    w = _float_weights(normal)
    base = K._float_sum(w[m:], 0.0, chunk_bits, np.int64(chunk))
    raw = K.gray_float(
        w[:m].copy(), base, m, cfg.lo, cfg.hi, np.int64(cfg.reanchor_period), K.TRAILING_ZEROS
    )
    return _tally_from(n, raw, cfg.tol)


def tally(normal: Normal, cfg: EnumConfig | None = None, workers: int = 1) -> Tally:
    """Enumerate all vertices once, split by the top ``cfg.chunk_bits`` bits.

    Chunks are reduced in chunk order so the result does not depend on
    ``workers``.  A ``chunk_bits`` at or above n is clamped to n - 1.
    """
    cfg = cfg or DEFAULT_CONFIG
    n = normal.dims
    _check_dims(n, MAX_DIMS, "vertex enumeration")
    if isinstance(normal, IntWeightVector):
        _check_dims(n, EXACT_MAX_DIMS, "exact mode")
        try:
            _int_weights(normal)
        except ExactOverflowError:
            if n > BIGINT_MAX_DIMS:
                raise
            return _bigint_tally(normal)
    if workers < 1:
        raise InvalidInputError("workers must be positive")
    chunk_bits = min(cfg.chunk_bits, n - 1)
    chunks = range(1 << chunk_bits)
    if workers == 1 or len(chunks) == 1:
        parts = [_chunk_tally(normal, cfg, chunk_bits, c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _chunk_tally(normal, cfg, chunk_bits, c), chunks))
    result = parts[0]
    for part in parts[1:]:
        result = result + part
    return result


def count_plank_naive(u: WeightVector, cfg: EnumConfig | None = None) -> PlankCount:
    """Reference count: every s is recomputed from scratch, no traversal order."""
    cfg = cfg or DEFAULT_CONFIG
    _check_dims(u.dims, NAIVE_MAX_DIMS, "naive oracle")
    raw = K.naive_float(_float_weights(u), u.dims, cfg.lo, cfg.hi)
    return _tally_from(u.dims, raw, cfg.tol).plank()


def count_plank_gray(u: WeightVector, cfg: EnumConfig | None = None) -> PlankCount:
    cfg = cfg or DEFAULT_CONFIG
    _check_dims(u.dims, MAX_DIMS, "Gray-code engine")
    return _chunk_tally(u, cfg, 0, 0).plank()


def count_plank_exact(b: IntWeightVector) -> PlankCount:
    return tally(b).plank()


def count_halfspace(normal: Normal, cfg: EnumConfig | None = None) -> HalfSpaceCount:
    """Vertices in the tangent half-space {x : <x, u> >= 1}."""
    return tally(normal, cfg).halfspace()


def count_parallel(normal: Normal, cfg: EnumConfig | None = None, workers: int = 1) -> PlankCount:
    return tally(normal, cfg, workers).plank()


def count_plank(normal: Normal, cfg: EnumConfig | None = None, workers: int = 1) -> PlankCount:
    return tally(normal, cfg, workers).plank()


def gray_sequence(n: int):
    """Masks in binary-reflected Gray order: step t visits t ^ (t >> 1)."""
    for t in range(1 << n):
        yield t ^ (t >> 1)


def closed_masks(normal: Normal, cfg: EnumConfig | None = None) -> np.ndarray:
    """Sorted masks of the vertices in the closed half-space {s >= 1 - tol}."""
    cfg = cfg or DEFAULT_CONFIG
    n = normal.dims
    _check_dims(n, NAIVE_MAX_DIMS, "closed half-space listing")
    if isinstance(normal, IntWeightVector):
        try:
            w = _int_weights(normal)
        except ExactOverflowError:
            _check_dims(n, BIGINT_MAX_DIMS, "arbitrary-precision exact mode")
            out = []
            for mask in range(1 << n):
                s = sum(-x if (mask >> i) & 1 else x for i, x in enumerate(normal.weights))
                if s > 0 and s * s >= normal.norm_sq:
                    out.append(mask)
            return np.array(out, dtype=np.int64)
        return K.closed_masks_exact(w, n, np.int64(normal.norm_sq))
    return K.closed_masks_float(_float_weights(normal), n, cfg.lo)
