"""Bound formulas and instance-level checks of the plank/half-space argument.

The pass flags compare exact integer counts against irrational bounds; the
comparisons are done by squaring in integers so equality cases are decided
exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    BoundReport,
    CentroidWitness,
    EmptyHalfSpaceError,
    IntWeightVector,
    InvalidInputError,
    Normal,
    SignVertex,
)
from .engine import DEFAULT_CONFIG, EnumConfig, closed_masks, tally

AXIS_TOL = 1e-9
CENTROID_RTOL = 1e-9


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)


def theorem1_bound(n: int) -> float:
    """Lower bound 2^(n-1) / sqrt(n) on the plank vertex count."""
    if n < 1:
        raise InvalidInputError("n must be positive")
    return math.ldexp(1.0, n - 1) / math.sqrt(n)


def lemma1_bound(n: int) -> float:
    """Strict upper bound (2 - 1/sqrt(n)) * 2^(n-2) on the open half-space count."""
    if n < 1:
        raise InvalidInputError("n must be positive")
    return (2.0 - 1.0 / math.sqrt(n)) * math.ldexp(1.0, n - 2)


def passes_theorem1(n: int, satisfied: int) -> bool:
    # satisfied >= 2^(n-1)/sqrt(n)  <=>  n * (2 satisfied)^2 >= 4^n
    return n * (2 * satisfied) ** 2 >= 4**n


def passes_lemma1(n: int, strict_interior: int) -> bool:
    # 4k < 2^(n+1) - 2^n/sqrt(n)  <=>  D > 0 and 4^n < n * D^2 with D = 2^(n+1) - 4k
    d = (1 << (n + 1)) - 4 * strict_interior
    return d > 0 and 4**n < n * d * d


def passes_tomaszewski(n: int, satisfied: int) -> bool:
    return 2 * satisfied >= 1 << n


def bound_report(normal: Normal, cfg: EnumConfig | None = None, workers: int = 1) -> BoundReport:
    t = tally(normal, cfg, workers)
    n = normal.dims
    plank = t.plank()
    strict = t.halfspace().strict_interior
    return BoundReport(
        dims=n,
        satisfied=plank.satisfied,
        strict_interior=strict,
        theorem1_bound=theorem1_bound(n),
        lemma1_bound=lemma1_bound(n),
        ratio=plank.ratio,
        pass_theorem1=passes_theorem1(n, plank.satisfied),
        pass_lemma1=passes_lemma1(n, strict),
        pass_tomaszewski=passes_tomaszewski(n, plank.satisfied),
    )


def verify_theorem1(normal: Normal, cfg: EnumConfig | None = None, workers: int = 1) -> BoundReport:
    return bound_report(normal, cfg, workers)


def verify_lemma1(normal: Normal, cfg: EnumConfig | None = None, workers: int = 1) -> BoundReport:
    return bound_report(normal, cfg, workers)


def verify_tomaszewski(normal: Normal, cfg: EnumConfig | None = None, workers: int = 1) -> BoundReport:
    return bound_report(normal, cfg, workers)


def _pi_flip(n: int, j: int) -> int:
    """XOR mask that negates every coordinate except coordinate j (1-based)."""
    return ((1 << n) - 1) ^ (1 << (j - 1))


def pi_map(v: SignVertex, j: int) -> SignVertex:
    """Keep coordinate j, negate all the others."""
    if not 1 <= j <= v.dims:
        raise InvalidInputError(f"coordinate index j={j} out of range 1..{v.dims}")
    return SignVertex(v.dims, v.mask ^ _pi_flip(v.dims, j))


def _closed(normal: Normal, cfg: EnumConfig | None) -> np.ndarray:
    return closed_masks(normal, cfg or DEFAULT_CONFIG)


def antipodal_free_check(normal: Normal, cfg: EnumConfig | None = None) -> Verdict:
    masks = _closed(normal, cfg)
    full = (1 << normal.dims) - 1
    hit = np.isin(masks ^ full, masks)
    if hit.any():
        m = int(masks[np.argmax(hit)])
        return Verdict("antipodal_free", False, {"witness": [m, m ^ full]})
    return Verdict("antipodal_free", True, {"closed": int(masks.size)})


def _is_axis(normal: Normal, j: int) -> bool:
    idx = j - 1
    if isinstance(normal, IntWeightVector):
        return all(x == 0 for i, x in enumerate(normal.weights) if i != idx)
    w = normal.weights
    return abs(abs(w[idx]) - 1.0) <= AXIS_TOL and all(
        abs(x) <= AXIS_TOL for i, x in enumerate(w) if i != idx
    )


def observation2_check(normal: Normal, cfg: EnumConfig | None = None) -> Verdict:
    """A pi-related pair in the closed half-space forces u = +-e_j and an empty interior.

    Passes vacuously when no coordinate admits such a pair.
    """
    n = normal.dims
    masks = _closed(normal, cfg)
    pairs = {}
    for j in range(1, n + 1) if n > 1 else ():
        hit = np.isin(masks ^ _pi_flip(n, j), masks)
        if hit.any():
            m = int(masks[np.argmax(hit)])
            pairs[j] = [m, m ^ _pi_flip(n, j)]
    if not pairs:
        return Verdict("observation2", True, {"pairs": {}, "vacuous": True})
    strict = tally(normal, cfg).halfspace().strict_interior
    axis_ok = all(_is_axis(normal, j) for j in pairs)
    detail = {"pairs": pairs, "vacuous": False, "axis": axis_ok, "strict_interior": strict}
    return Verdict("observation2", axis_ok and strict == 0, detail)


def pi_image_bound_holds(normal: Normal, j: int = 1, cfg: EnumConfig | None = None) -> bool:
    """|M*| + |pi(M*)| <= 2^(n-1) + |M* & pi(M*)| on the face x_j = +1."""
    n = normal.dims
    masks = _closed(normal, cfg)
    face = masks[(masks >> (j - 1)) & 1 == 0]
    image = face ^ _pi_flip(n, j)
    if ((image >> (j - 1)) & 1).any():
        return False
    if np.unique(image).size != face.size:
        return False
    common = np.intersect1d(face, image).size
    return face.size + image.size <= (1 << (n - 1)) + common


def centroid_witness(normal: Normal, cfg: EnumConfig | None = None) -> CentroidWitness:
    """Sum w of all closed half-space vertices; checks <w,u> >= k and |w| >= k.

    Float mode allows a relative slack of max(1e-9, tol).  Exact mode compares
    <w,b>^2 with k^2 |b|^2 in integers.
    """
    cfg = cfg or DEFAULT_CONFIG
    n = normal.dims
    masks = _closed(normal, cfg)
    k = int(masks.size)
    if k == 0:
        raise EmptyHalfSpaceError("closed half-space contains no vertex")
    w = tuple(k - 2 * int(((masks >> i) & 1).sum()) for i in range(n))
    w_norm_sq = sum(x * x for x in w)
    w_norm = math.sqrt(w_norm_sq)
    if isinstance(normal, IntWeightVector):
        wb = sum(x * y for x, y in zip(w, normal.weights))
        holds = (
            all(abs(x) <= k for x in w)
            and wb >= 0
            and wb * wb >= k * k * normal.norm_sq
            and w_norm_sq >= k * k
        )
        dot = wb / math.sqrt(normal.norm_sq)
    else:
        dot = math.fsum(x * y for x, y in zip(w, normal.weights))
        floor = k * (1.0 - max(CENTROID_RTOL, cfg.tol))
        holds = all(abs(x) <= k for x in w) and dot >= floor and w_norm >= floor
    return CentroidWitness(w=w, k=k, w_norm=w_norm, dot=dot, holds=holds)


def structural_checks(normal: Normal, cfg: EnumConfig | None = None) -> list[Verdict]:
    """Antipodal, observation-2, centroid and plank/half-space identity verdicts."""
    t = tally(normal, cfg)
    out = [antipodal_free_check(normal, cfg), observation2_check(normal, cfg)]
    try:
        cw = centroid_witness(normal, cfg)
        out.append(Verdict("centroid", cw.holds, {"k": cw.k, "w_norm": cw.w_norm, "dot": cw.dot}))
    except EmptyHalfSpaceError:
        out.append(Verdict("centroid", False, {"k": 0}))
    sat = t.plank().satisfied
    strict = t.halfspace().strict_interior
    out.append(
        Verdict(
            "symmetry_identity",
            sat == (1 << normal.dims) - 2 * strict,
            {"satisfied": sat, "strict_interior": strict},
        )
    )
    return out

