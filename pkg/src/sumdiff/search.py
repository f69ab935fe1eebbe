"""Grid search over (m, L, B) for the largest theta lower bound.

Phase one ranks every grid point by a float estimate built from exact counts.
Phase two (``confirm``) recomputes the certified ThetaBound for the returned
candidates through the 64-bit-mantissa log path, so the two phases share the
integers but not the logarithm.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal

from sumdiff.counts import Params, ThetaBound, canonicalize, set_counts, theta, THETA_QUANTUM

WORKERS_ENV = "SUMDIFF_WORKERS"

# width of the band around a 1e-6 grid point where the two log routes may floor differently
NEAR_GRID_BAND = 1e-9


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        n = int(env)
        if n < 1:
            raise ValueError(f"{WORKERS_ENV} must be >= 1, got {n}")
        return n
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SearchSpec:
    m_range: tuple[int, int]
    L_values: tuple[int, ...]
    B_range: tuple[int, int]
    top_n: int = 10
    confirm: bool = False

    def __post_init__(self):
        (m_lo, m_hi), (b_lo, b_hi) = self.m_range, self.B_range
        if m_lo > m_hi or b_lo > b_hi or not self.L_values:
            raise ValueError(f"empty search grid: {self}")
        if min(m_lo, b_lo, *self.L_values) < 0:
            raise ValueError("grid values must be non-negative")
        if self.top_n < 1:
            raise ValueError("top_n must be >= 1")

    def grid(self) -> list[Params]:
        """Canonical grid points, deduplicated, in lexicographic order."""
        pts = {
            canonicalize(Params(m, L, B))
            for m in range(self.m_range[0], self.m_range[1] + 1)
            for L in self.L_values
            for B in range(self.B_range[0], self.B_range[1] + 1)
        }
        return sorted(pts)


@dataclass(frozen=True)
class Candidate:
    params: Params
    theta_est: float
    theta_exact: ThetaBound | None = None
    # set when the estimate sits close enough to a 1e-6 boundary that the
    # confirmed floor may legitimately differ by one unit
    near_grid: bool = False

    def sort_key(self):
        return (-self.theta_est, self.params)


@dataclass(frozen=True)
class SearchResult:
    ranked: list[Candidate]
    skipped: list[tuple[Params, str]] = field(default_factory=list)

    @property
    def best(self) -> Candidate | None:
        return self.ranked[0] if self.ranked else None


def estimate(p: Params) -> tuple[Params, float | None, str | None]:
    """Float theta from exact counts, or a skip reason for degenerate points."""
    c = set_counts(p)
    if c.q < 3 or c.u < 2:
        return p, None, f"degenerate: u={c.u}, q={c.q}"
    # math.log accepts arbitrarily large ints directly
    est = 1.0 + (math.log(c.d) - math.log(c.s)) / math.log(c.q)
    return p, est, None


def _near_grid(x: float) -> bool:
    scaled = x * 1e6
    return abs(scaled - round(scaled)) * 1e-6 <= NEAR_GRID_BAND


def _confirm(cand: Candidate) -> Candidate:
    tb = theta(cand.params)
    if abs(tb.estimate - cand.theta_est) > NEAR_GRID_BAND:
        raise ArithmeticError(
            f"log routes disagree at {cand.params}: {tb.estimate!r} vs {cand.theta_est!r}"
        )
    floor_est = Decimal(math.floor(cand.theta_est * 1e6)) * THETA_QUANTUM
    near = _near_grid(cand.theta_est) or floor_est != tb.theta_lower
    return Candidate(cand.params, cand.theta_est, tb, near)


def _run(points: list[Params], top_n: int, confirm: bool, workers: int | None) -> SearchResult:
    workers = default_workers() if workers is None else workers
    if workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(points))) as pool:
            chunk = max(1, len(points) // (4 * workers))
            results = list(pool.map(estimate, points, chunksize=chunk))
    else:
        results = [estimate(p) for p in points]

    ranked, skipped = [], []
    for p, est, reason in results:
        if est is None:
            skipped.append((p, reason))
        else:
            ranked.append(Candidate(p, est))
    ranked.sort(key=Candidate.sort_key)
    ranked = ranked[:top_n]
    if confirm:
        ranked = [_confirm(c) for c in ranked]
    return SearchResult(ranked, skipped)


def sweep(spec: SearchSpec, workers: int | None = None) -> SearchResult:
    return _run(spec.grid(), spec.top_n, spec.confirm, workers)


def refine(
    center: Params,
    radius_m: int,
    top_n: int = 10,
    confirm: bool = True,
    workers: int | None = None,
) -> SearchResult:
    """Sweep m in [center.m - radius_m, center.m + radius_m] with L and B held fixed."""
    if radius_m < 0:
        raise ValueError("radius_m must be >= 0")
    lo = max(center.m - radius_m, 0)
    spec = SearchSpec((lo, center.m + radius_m), (center.L,), (center.B, center.B), top_n, confirm)
    return sweep(spec, workers)


def suggest_start(L: int) -> Params:
    """(5L/4 rounded half-up, L, 5): where the best theta tends to sit for fixed L."""
    if L < 1:
        raise ValueError("L must be >= 1")
    return Params((5 * L + 2) // 4, L, 5)
