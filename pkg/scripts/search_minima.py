"""Tabulate annealing minima of the plank count for a range of dimensions."""

import argparse
import time

from plankcount.search import SearchConfig, search_minimum


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--restarts", type=int, default=50)
    ap.add_argument("--steps", type=int, default=5000)
    args = ap.parse_args()

    print(f"{'n':>3} {'min count':>10} {'2^(n-1)':>8} {'ratio':>7} {'restart':>7} {'secs':>6}  direction")
    for n in range(1, args.n_max + 1):
        t0 = time.perf_counter()
        cfg = SearchConfig(restarts=args.restarts, steps_per_restart=args.steps, rng_seed=args.seed)
        r = search_minimum(n, cfg)
        direction = r.exact_weights if r.exact_weights else tuple(round(x, 3) for x in r.best.weights)
        print(f"{n:>3} {r.satisfied:>10} {2 ** (n - 1):>8} {r.ratio:>7.4f} {r.best_restart:>7} "
              f"{time.perf_counter() - t0:>6.1f}  {direction}")


if __name__ == "__main__":
    main()
