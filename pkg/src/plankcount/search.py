"""Annealing over the unit sphere for weight vectors with few plank vertices.

Moves are plane (Givens) rotations, so iterates never leave the sphere.  The
objective is the satisfied count plus a slack term below one, which only
orders vectors inside a plateau of equal counts.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels as K
from .core import (
    IntWeightVector,
    InvalidInputError,
    SearchResult,
    WeightVector,
    normalize,
)
from .engine import count_plank

RENORMALIZE_EVERY = 1024


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 50
    steps_per_restart: int = 5000
    initial_temperature: float = 1.0
    cooling: float = 0.999
    slack_weight: float = 0.5
    rng_seed: int = 0
    step_scale: float = 0.5  # theta std = step_scale * temperature
    tol: float = 1e-9
    polish_steps: int | None = None  # None: same as steps_per_restart
    rationalize: bool = True
    max_denominator: int = 16
    workers: int = 1

    def __post_init__(self):
        if self.restarts < 1:
            raise InvalidInputError("restarts must be positive")
        if self.steps_per_restart < 0:
            raise InvalidInputError("steps_per_restart must be nonnegative")
        if self.initial_temperature <= 0:
            raise InvalidInputError("initial_temperature must be positive")
        if not 0.0 < self.cooling < 1.0:
            raise InvalidInputError("cooling must lie in (0, 1)")
        if not 0.0 <= self.slack_weight < 1.0:
            raise InvalidInputError("slack_weight must lie in [0, 1)")


def sample_unit_vector(n: int, rng: np.random.Generator) -> WeightVector:
    if n < 1:
        raise InvalidInputError("n must be positive")
    while True:
        x = rng.standard_normal(n)
        if np.any(x != 0.0):
            return normalize(x)


def _rotate(x: np.ndarray, i: int, j: int, theta: float) -> None:
    c, s = math.cos(theta), math.sin(theta)
    xi, xj = x[i], x[j]
    x[i] = c * xi - s * xj
    x[j] = s * xi + c * xj


def givens_perturb(u: WeightVector, i: int, j: int, theta: float) -> WeightVector:
    """Rotate coordinates (i, j) (1-based) by theta; every other entry is untouched."""
    n = u.dims
    if i == j:
        raise InvalidInputError("rotation plane needs two distinct coordinates")
    if not (1 <= i <= n and 1 <= j <= n):
        raise InvalidInputError(f"coordinates ({i}, {j}) out of range 1..{n}")
    x = u.as_array()
    _rotate(x, i - 1, j - 1, theta)
    return WeightVector(tuple(x), normalized=u.normalized)


def _slack(x: np.ndarray, tol: float) -> tuple[int, float]:
    """Satisfied count and mean slack 1 - |s| over the satisfied vertices."""
    sat, slack = K.gray_slack(x, x.shape[0], 1.0 + tol, np.int64(1 << 20), K.TRAILING_ZEROS)
    sat = int(sat)
    return sat, (slack / sat if sat else 0.0)


def _evaluate(x: np.ndarray, slack_weight: float, tol: float) -> tuple[float, int]:
    sat, mean_slack = _slack(x, tol)
    return sat + slack_weight * mean_slack, sat


def objective(u: WeightVector, slack_weight: float = 0.5, tol: float = 1e-9) -> float:
    """Satisfied count plus slack_weight times the mean of 1 - |s| over satisfied vertices."""
    if not 0.0 <= slack_weight < 1.0:
        raise InvalidInputError("slack_weight must lie in [0, 1)")
    return _evaluate(u.as_array(), slack_weight, tol)[0]


@dataclass(frozen=True)
class _Run:
    best: np.ndarray
    objective: float
    satisfied: int
    mean_slack: float
    evaluations: int


class _Moves:
    """Pre-drawn rotation planes, angle noise and acceptance coins for one phase."""

    def __init__(self, n: int, steps: int, rng: np.random.Generator):
        self.first = rng.integers(0, n, size=steps)
        second = rng.integers(0, n - 1, size=steps)
        self.second = second + (second >= self.first)
        self.gauss = rng.standard_normal(steps)
        self.coins = rng.random(steps)

    def propose(self, cur: np.ndarray, out: np.ndarray, step: int, scale: float) -> None:
        out[:] = cur
        _rotate(out, self.first[step], self.second[step], self.gauss[step] * scale)
        if (step + 1) % RENORMALIZE_EVERY == 0:
            out /= math.sqrt(math.fsum(out * out))


def _anneal(start: np.ndarray, cfg: SearchConfig, rng: np.random.Generator) -> _Run:
    n = start.shape[0]
    steps = cfg.steps_per_restart if n > 1 else 0
    cur = start.copy()
    f_cur, sat_cur = _evaluate(cur, cfg.slack_weight, cfg.tol)
    best, f_best, sat_best = cur.copy(), f_cur, sat_cur
    evals = 1
    if not steps:
        return _Run(best, f_best, sat_best, _slack(best, cfg.tol)[1], evals)

    moves = _Moves(n, steps, rng)
    temp = cfg.initial_temperature
    cand = np.empty_like(cur)
    for step in range(steps):
        moves.propose(cur, cand, step, cfg.step_scale * temp)
        f, sat = _evaluate(cand, cfg.slack_weight, cfg.tol)
        evals += 1
        delta = f - f_cur
        if delta <= 0.0 or moves.coins[step] < math.exp(-delta / temp):
            cur, cand = cand, cur
            f_cur = f
            if f_cur < f_best:
                best, f_best, sat_best = cur.copy(), f_cur, sat
        temp *= cfg.cooling

    best, sat_best, extra = _polish(best, sat_best, cfg, rng)
    sat_best, mean_slack = _slack(best, cfg.tol)
    f_best = sat_best + cfg.slack_weight * mean_slack
    return _Run(best, f_best, sat_best, mean_slack, evals + extra)


def _polish(x: np.ndarray, sat: int, cfg: SearchConfig, rng: np.random.Generator):
    """Walk the plateau of count <= sat towards the largest mean slack.

    Minimising the objective drives satisfied vertices onto the boundary,
    which ends near a coordinate axis; the reported minimiser is instead the
    deepest point of the minimal-count plateau.
    """
    n = x.shape[0]
    steps = cfg.steps_per_restart if cfg.polish_steps is None else cfg.polish_steps
    if steps == 0:
        return x, sat, 0
    moves = _Moves(n, steps, rng)
    cur = x.copy()
    sat_cur, slack_cur = _slack(cur, cfg.tol)
    best, sat_best, slack_best = cur.copy(), sat_cur, slack_cur
    temp = cfg.initial_temperature
    cand = np.empty_like(cur)
    for step in range(steps):
        moves.propose(cur, cand, step, cfg.step_scale * temp)
        s, slack = _slack(cand, cfg.tol)
        if s <= sat_cur:
            delta = slack_cur - slack
            if delta <= 0.0 or moves.coins[step] < math.exp(-delta / temp):
                cur, cand = cand, cur
                sat_cur, slack_cur = s, slack
                if (sat_cur, -slack_cur) < (sat_best, -slack_best):
                    best, sat_best, slack_best = cur.copy(), sat_cur, slack_cur
        temp *= cfg.cooling
    return best, sat_best, steps


def _as_result(run: _Run, cfg: SearchConfig, restarts_used: int, index: int, evals: int) -> SearchResult:
    best = normalize(run.best)
    return SearchResult(
        best=best,
        satisfied=run.satisfied,
        ratio=run.satisfied / (1 << best.dims),
        restarts_used=restarts_used,
        rng_seed=cfg.rng_seed,
        evaluations=evals,
        best_restart=index,
    )


def local_search(start: WeightVector, cfg: SearchConfig, rng: np.random.Generator) -> SearchResult:
    """One annealing run from ``start``; reports the best vector's plain count."""
    if not start.normalized:
        raise InvalidInputError("start vector must be normalized")
    run = _anneal(start.as_array(), cfg, rng)
    return _as_result(run, cfg, 1, 0, run.evaluations)


def _restart(n: int, cfg: SearchConfig, index: int) -> _Run:
    rng = np.random.default_rng(cfg.rng_seed ^ index)
    start = sample_unit_vector(n, rng)
    return _anneal(start.as_array(), cfg, rng)


def rationalize(u: WeightVector, satisfied: int, max_denominator: int = 16):
    """Smallest-scale integer direction near ``u`` whose exact count is no worse.

    Tries b = round(q * u / max|u_i|) for q = 1 .. max_denominator and returns
    ``(b, exact_count)`` for the first b with exact count <= ``satisfied``, or
    None.
    """
    x = u.as_array()
    x = x / np.abs(x).max()
    for q in range(1, max_denominator + 1):
        b = np.rint(q * x).astype(np.int64)
        if not b.any():
            continue
        b = IntWeightVector(tuple(int(v) for v in b))
        exact = count_plank(b).satisfied
        if exact <= satisfied:
            return b, exact
    return None


def search_minimum(n: int, cfg: SearchConfig | None = None) -> SearchResult:
    """Multi-restart annealing; restart r is seeded with rng_seed XOR r.

    The winner is the smallest satisfied count, then the larger mean slack,
    then the lower restart index, so the outcome does not depend on
    ``cfg.workers``.
    """
    cfg = cfg or SearchConfig()
    if n < 1:
        raise InvalidInputError("n must be positive")
    indices = range(cfg.restarts)
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            runs = list(pool.map(_restart, [n] * cfg.restarts, [cfg] * cfg.restarts, indices))
    else:
        runs = [_restart(n, cfg, r) for r in indices]
    winner = min(indices, key=lambda r: (runs[r].satisfied, -runs[r].mean_slack, r))
    evals = sum(r.evaluations for r in runs)
    result = _as_result(runs[winner], cfg, cfg.restarts, winner, evals)
    if cfg.rationalize:
        found = rationalize(result.best, result.satisfied, cfg.max_denominator)
        if found is not None:
            b, exact = found
            result = replace(
                result,
                best=b.to_unit(),
                satisfied=exact,
                ratio=exact / (1 << n),
                exact_weights=b.weights,
            )
    return result


def family_count(n: int, k: int) -> int:
    """Exact satisfied count for k equal weights 1/sqrt(k) and n - k zeros."""
    if not 1 <= k <= n:
        raise InvalidInputError(f"need 1 <= k <= n, got k={k}, n={n}")
    return sum(math.comb(k, j) for j in range(k + 1) if (k - 2 * j) ** 2 <= k) << (n - k)


def family_vector(n: int, k: int) -> WeightVector:
    if not 1 <= k <= n:
        raise InvalidInputError(f"need 1 <= k <= n, got k={k}, n={n}")
    return normalize([1.0] * k + [0.0] * (n - k))
