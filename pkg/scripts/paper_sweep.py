"""Sweep m = 1..128, L = 64, B = 1..7 and print the top candidates next to the unbounded baseline."""

import time

from sumdiff.counts import baseline_theta
from sumdiff.search import SearchSpec, suggest_start, sweep


def main():
    spec = SearchSpec((1, 128), (64,), (1, 7), top_n=10, confirm=True)
    t0 = time.perf_counter()
    res = sweep(spec)
    print(f"{len(spec.grid())} grid points in {time.perf_counter() - t0:.2f} s")
    print(f"{'m':>4} {'L':>4} {'B':>2}  {'theta_est':>12}  {'theta_lower':>11}")
    for c in res.ranked:
        m, L, B = c.params
        flag = "  (near grid)" if c.near_grid else ""
        print(f"{m:>4} {L:>4} {B:>2}  {c.theta_est:12.9f}  {c.theta_exact.theta_lower}{flag}")
    print(f"heuristic start for L=64: {tuple(suggest_start(64))}")
    best_base = max((baseline_theta(m, 64).theta_lower, m) for m in range(1, 129))
    print(f"unbounded baseline, best over m<=128 at L=64: theta={best_base[0]} (m={best_base[1]})")


if __name__ == "__main__":
    main()
