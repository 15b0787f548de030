"""plankcount command line.

    plankcount count     --weights 1,1 --mode exact
    plankcount halfspace --weights 1,1,0
    plankcount verify    --weights 0.6,0.8 --tol 1e-9
    plankcount search    --n 6 --seed 42 --restarts 50
    plankcount sweep     --n-range 2:12 --samples 500 --seed 7
    plankcount family    --n 20 --k-range 2:10 --format csv

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .bounds import bound_report, structural_checks
from .core import IntWeightVector, InvalidInputError, normalize
from .engine import EnumConfig, tally
from .search import SearchConfig, family_count, sample_unit_vector, search_minimum

CHECKS_MAX_DIMS = 16  # structural checkers list the closed half-space explicitly


class InputFileError(OSError):
    pass


@dataclass
class RunSpec:
    subcommand: str
    mode: str = "float"
    weights: list = field(default_factory=list)  # one entry per vector
    weights_file: str | None = None
    n: int | None = None
    k: int | None = None
    k_range: tuple[int, int] | None = None
    n_range: tuple[int, int] | None = None
    workers: int = 1
    chunk_bits: int = 0
    tol: float = 1e-9
    seed: int = 0
    restarts: int = 50
    steps: int = 5000
    slack_weight: float = 0.5
    samples: int = 100
    output_format: str = "json"
    output_path: str | None = None
    timing: bool = False


def _parse_number(text: str, exact: bool):
    text = text.strip()
    if exact:
        return int(text)
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"non-finite weight {text!r}")
    return value


def parse_vector(line: str, exact: bool) -> list:
    return [_parse_number(t, exact) for t in line.split(",")]


def read_weights_file(path: str, exact: bool) -> list:
    """One vector per line, comma separated; blank lines and '#' lines are skipped."""
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputFileError(str(exc)) from exc
    return [parse_vector(ln, exact) for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("PLANKCOUNT_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("json", "csv"), default="json")
    common.add_argument("--out", dest="output_path")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--workers", type=int, default=_default_workers())
    common.add_argument("--timing", action="store_true", help="fill timing_ms (breaks byte stability)")

    weights = argparse.ArgumentParser(add_help=False)
    src = weights.add_mutually_exclusive_group(required=True)
    src.add_argument("--weights", help="comma-separated weights")
    src.add_argument("--weights-file", help="file with one comma-separated vector per line")
    weights.add_argument("--mode", choices=("float", "exact"), default="float")
    weights.add_argument("--chunk-bits", type=int, default=0)

    parser = argparse.ArgumentParser(prog="plankcount", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("count", parents=[common, weights], help="plank vertex counts")
    sub.add_parser("halfspace", parents=[common, weights], help="tangent half-space counts")
    sub.add_parser("verify", parents=[common, weights], help="bound verdicts and structural checks")

    p = sub.add_parser("search", parents=[common], help="search for extremal weight vectors")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--steps", type=int, default=5000)
    p.add_argument("--lambda", dest="slack_weight", type=float, default=0.5)

    p = sub.add_parser("sweep", parents=[common], help="bound reports over random unit vectors")
    dims = p.add_mutually_exclusive_group(required=True)
    dims.add_argument("--n", type=int)
    dims.add_argument("--n-range", type=_range)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chunk-bits", type=int, default=0)

    p = sub.add_parser("family", parents=[common], help="exact counts for equal-weight families")
    p.add_argument("--n", type=int, required=True)
    ks = p.add_mutually_exclusive_group()
    ks.add_argument("--k", type=int)
    ks.add_argument("--k-range", type=_range)
    return parser


def parse_args(argv=None) -> RunSpec:
    parser = build_parser()
    ns = parser.parse_args(argv)
    spec = RunSpec(subcommand=ns.subcommand)
    for name in (
        "mode", "weights_file", "n", "k", "k_range", "n_range", "workers", "chunk_bits",
        "tol", "seed", "restarts", "steps", "slack_weight", "samples", "output_format",
        "output_path", "timing",
    ):
        if getattr(ns, name, None) is not None:
            setattr(spec, name, getattr(ns, name))
    exact = spec.mode == "exact"

    if getattr(ns, "weights", None) is not None:
        try:
            spec.weights = [parse_vector(ns.weights, exact)]
        except ValueError as exc:
            parser.error(f"bad --weights: {exc}")
    if not 0.0 <= spec.tol < 1.0:
        parser.error("--tol must lie in [0, 1)")
    if spec.workers < 1:
        parser.error("--workers must be positive")
    if spec.chunk_bits < 0:
        parser.error("--chunk-bits must be nonnegative")
    if spec.subcommand in ("search", "family", "sweep") and spec.n is not None and spec.n < 1:
        parser.error("--n must be positive")
    if spec.subcommand == "family":
        if spec.k is not None and not 1 <= spec.k <= spec.n:
            parser.error(f"--k must lie in [1, n={spec.n}]")
        if spec.k_range is not None and not (1 <= spec.k_range[0] and spec.k_range[1] <= spec.n):
            parser.error(f"--k-range must lie in [1, n={spec.n}]")
        if spec.k is None and spec.k_range is None:
            spec.k_range = (1, spec.n)
    if spec.subcommand == "sweep":
        if spec.n_range is None:
            spec.n_range = (spec.n, spec.n)
        if spec.n_range[0] < 1:
            parser.error("--n-range must start at 1 or above")
        if spec.samples < 1:
            parser.error("--samples must be positive")
    if spec.subcommand == "search":
        if spec.restarts < 1 or spec.steps < 0:
            parser.error("--restarts must be positive and --steps nonnegative")
        if not 0.0 <= spec.slack_weight < 1.0:
            parser.error("--lambda must lie in [0, 1)")
    return spec


def _normal(vector: list, mode: str):
    if mode == "exact":
        return IntWeightVector(tuple(vector))
    return normalize(vector)


def _vectors(spec: RunSpec) -> list:
    if spec.weights_file is not None:
        try:
            return read_weights_file(spec.weights_file, spec.mode == "exact")
        except ValueError as exc:
            raise InvalidInputError(f"{spec.weights_file}: {exc}") from exc
    return spec.weights


def _count_rows(spec: RunSpec) -> tuple[list, list]:
    cfg = EnumConfig(tol=0.0 if spec.mode == "exact" else spec.tol, chunk_bits=spec.chunk_bits)
    rows, checks = [], []
    for vector in _vectors(spec):
        normal = _normal(vector, spec.mode)
        if spec.subcommand == "count":
            c = tally(normal, cfg, spec.workers).plank()
            rows.append({"dims": c.dims, "inside": c.inside, "boundary": c.boundary,
                         "outside": c.outside, "satisfied": c.satisfied, "ratio": c.ratio,
                         "tol": c.tol})
        elif spec.subcommand == "halfspace":
            h = tally(normal, cfg, spec.workers).halfspace()
            rows.append({"dims": h.dims, "strict_interior": h.strict_interior,
                         "boundary": h.boundary, "closed": h.closed, "tol": h.tol})
        else:
            row = asdict(bound_report(normal, cfg, spec.workers))
            verdicts = {}
            if normal.dims <= CHECKS_MAX_DIMS:
                for v in structural_checks(normal, cfg):
                    verdicts[v.name] = v.passed
            row.update(verdicts)
            rows.append(row)
            checks.append({"pass_theorem1": row["pass_theorem1"],
                           "pass_lemma1": row["pass_lemma1"],
                           "pass_tomaszewski": row["pass_tomaszewski"], **verdicts})
    return rows, checks


_SWEEP_CHECKS = ("antipodal_free", "observation2", "centroid", "symmetry_identity")


def sweep_rows(n_range: tuple[int, int], samples: int, seed: int, tol: float = 1e-9,
               chunk_bits: int = 0, workers: int = 1) -> list:
    """Bound report per random unit vector; vectors for dimension n come from rng([seed, n])."""
    cfg = EnumConfig(tol=tol, chunk_bits=chunk_bits)
    rows = []
    for n in range(n_range[0], n_range[1] + 1):
        rng = np.random.default_rng([seed, n])
        for i in range(samples):
            u = sample_unit_vector(n, rng)
            row = {"n": n, "sample": i}
            row.update(asdict(bound_report(u, cfg, workers)))
            del row["dims"]
            if n <= CHECKS_MAX_DIMS:
                row.update({v.name: v.passed for v in structural_checks(u, cfg)})
            else:
                row.update({name: None for name in _SWEEP_CHECKS})
            rows.append(row)
    return rows


def _sweep(spec: RunSpec) -> tuple[list, dict]:
    rows = sweep_rows(spec.n_range, spec.samples, spec.seed, spec.tol, spec.chunk_bits, spec.workers)
    flags = ("pass_theorem1", "pass_lemma1", "pass_tomaszewski") + _SWEEP_CHECKS
    failures = {f: sum(1 for r in rows if r[f] is False) for f in flags}
    return rows, {"rows": len(rows), "failures": failures, "all_pass": not any(failures.values())}


def _search(spec: RunSpec) -> tuple[dict, dict]:
    cfg = SearchConfig(restarts=spec.restarts, steps_per_restart=spec.steps,
                       slack_weight=spec.slack_weight, rng_seed=spec.seed, tol=spec.tol,
                       workers=spec.workers)
    r = search_minimum(spec.n, cfg)
    result = {"dims": spec.n, "best": list(r.best.weights), "satisfied": r.satisfied,
              "ratio": r.ratio, "restarts_used": r.restarts_used, "rng_seed": r.rng_seed,
              "evaluations": r.evaluations, "best_restart": r.best_restart,
              "exact_weights": list(r.exact_weights) if r.exact_weights else None}
    return result, {"pass_tomaszewski": 2 * r.satisfied >= 1 << spec.n}


def _family(spec: RunSpec) -> list:
    ks = [spec.k] if spec.k is not None else range(spec.k_range[0], spec.k_range[1] + 1)
    rows = []
    for k in ks:
        sat = family_count(spec.n, k)
        rows.append({"n": spec.n, "k": k, "satisfied": sat, "ratio": sat / (1 << spec.n)})
    return rows


def _any_false(obj) -> bool:
    if isinstance(obj, dict):
        return any(_any_false(v) for k, v in obj.items() if k not in ("failures", "rows"))
    if isinstance(obj, list):
        return any(_any_false(v) for v in obj)
    return obj is False


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return ";".join(_csv_value(x) for x in v)
    return str(v)


def render(spec: RunSpec, result, checks, timing_ms) -> str:
    if spec.output_format == "csv":
        rows = result if isinstance(result, list) else [result]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if rows:
            writer.writerow(rows[0].keys())
            for row in rows:
                writer.writerow(_csv_value(v) for v in row.values())
        return buf.getvalue()
    shown = {k: v for k, v in asdict(spec).items() if k not in ("output_path", "output_format", "timing")}
    doc = {"spec": shown, "result": result, "checks": checks, "timing_ms": timing_ms}
    return json.dumps(doc, indent=2) + "\n"


def run(spec: RunSpec) -> int:
    start = time.perf_counter()
    try:
        if spec.subcommand in ("count", "halfspace", "verify"):
            rows, checks = _count_rows(spec)
            single = spec.weights_file is None
            result = rows[0] if single else rows
            checks = (checks[0] if single else checks) if checks else None
        elif spec.subcommand == "sweep":
            result, checks = _sweep(spec)
        elif spec.subcommand == "search":
            result, checks = _search(spec)
        else:
            result, checks = _family(spec), None
    except InputFileError as exc:
        print(f"plankcount: {exc}", file=sys.stderr)
        return 3
    except (InvalidInputError, ValueError, ArithmeticError) as exc:
        print(f"plankcount: {exc}", file=sys.stderr)
        return 2
    timing_ms = round((time.perf_counter() - start) * 1000.0, 3) if spec.timing else None
    text = render(spec, result, checks, timing_ms)
    if spec.output_path:
        try:
            with open(spec.output_path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"plankcount: {exc}", file=sys.stderr)
            return 3
    else:
        sys.stdout.write(text)
    return 1 if _any_false(checks) or _any_false(result) else 0


def main(argv=None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
