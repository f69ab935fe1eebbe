"""Closed-form cardinalities for U(m, L, B) and the theta lower bound.

W(m, L, B) is the set of length-m vectors of non-negative integers with every
coordinate <= B and coordinate sum <= L. U is its image under the base-(2B+1)
positional encoding, so |U+U| and |U-U| are counts of vectors too:

    u = |W(m, L, B)|
    s = |U+U| = |W(m, 2L, 2B)|
    d = |U-U| = sum_k C(m, k) |W(k, L-k, B-1)| |W(m-k, L, B)|
    q = 2 max(U) + 1

All four are computed in exact integers. The alternating inclusion-exclusion
sum for |W| loses everything in floating point, so floats only enter when
taking logs for theta.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_FLOOR, Decimal
from typing import Any, NamedTuple

from sumdiff.bigcomb import (
    GMP_BACKEND,
    INT_BACKEND,
    Backend,
    binomial,
    default_backend,
    log_of,
    pow_int,
)

THETA_QUANTUM = Decimal("0.000001")


class DegenerateParamsError(ValueError):
    """theta is undefined: U is trivial or 2 max(U) + 1 < 3."""


class Params(NamedTuple):
    m: int
    L: int
    B: int

    def __str__(self) -> str:
        return f"(m={self.m}, L={self.L}, B={self.B})"


def canonicalize(p: Params) -> Params:
    m, L, B = p
    if min(m, L, B) < 0:
        raise ValueError(f"parameters must be non-negative, got {tuple(p)}")
    return Params(m, min(L, m * B), B)


@dataclass(frozen=True)
class SetCounts:
    u: int
    s: int
    d: int
    q: int


@dataclass(frozen=True)
class ThetaBound:
    theta_lower: Decimal
    ln_ratio: float
    ln_q: float

    @property
    def estimate(self) -> float:
        return 1.0 + self.ln_ratio / self.ln_q


def _alternating(terms) -> Any:
    pos = sum(terms[0::2])
    neg = sum(terms[1::2])
    return pos - neg


def _w_terms(m: int, L: int, B: int, be: Backend) -> list:
    """Unsigned inclusion-exclusion terms C(m, i) C(m + L - i(B+1), m) of |W(m, L, B)|."""
    return [be.comb(m, i) * be.comb(m + L - i * (B + 1), m) for i in range(L // (B + 1) + 1)]


def count_w(p: Params, backend: Backend | None = None) -> int:
    """|W(m, L, B)| by inclusion-exclusion over coordinates forced above B."""
    m, L, B = canonicalize(Params(*p))
    if m == 0 or L == 0 or B == 0:
        return 1
    return int(_alternating(_w_terms(m, L, B, backend or default_backend())))


def count_sum(p: Params, backend: Backend | None = None) -> int:
    m, L, B = p
    return count_w(Params(m, 2 * L, 2 * B), backend)


def count_diff_direct(p: Params) -> int:
    """|W - W| summed over the number k of positive coordinates.

    Positive coordinates lie in [1, B] with sum <= L, i.e. after subtracting 1
    each, a W(k, L-k, B-1) vector. The rest are negated W(m-k, L, B) entries.
    Every inner count is evaluated from scratch; `count_diff` is the fast form.
    """
    m, L, B = canonicalize(Params(*p))
    if m == 0 or L == 0:
        return 1
    total = 0
    for k in range(min(m, L) + 1):
        total += binomial(m, k) * count_w(Params(k, L - k, B - 1)) * count_w(Params(m - k, L, B))
    return total


def _diff_range(m: int, L: int, B: int, k_lo: int, k_hi: int, be: Backend) -> int:
    """Sum of the k-th terms of `count_diff` for k_lo <= k <= k_hi."""
    c_mk = be.comb(m, k_lo)
    a_terms = [
        be.comb(k_lo, i) * be.comb(L - i * B, k_lo) for i in range(min(k_lo, (L - k_lo) // B) + 1)
    ]
    j = m - k_lo
    b_terms = [
        be.comb(j, i) * be.comb(j + L - i * (B + 1), j) for i in range(min(j, L // (B + 1)) + 1)
    ]
    total = be.big(0)
    for k in range(k_lo, k_hi + 1):
        total += c_mk * _alternating(a_terms) * _alternating(b_terms)
        if k == k_hi:
            break
        j = m - k
        c_mk = be.divexact(c_mk * (m - k), k + 1)
        a_terms = [be.divexact(t * (L - i * B - k), k + 1 - i) for i, t in enumerate(a_terms)]
        if (k + 1) * (B + 1) <= L:
            a_terms.append(be.comb(L - (k + 1) * B, k + 1))
        b_terms = [
            be.divexact(t * (j - i), j + L - i * (B + 1)) for i, t in enumerate(b_terms)
        ]
        # zero terms only ever appear at the high-i end
        while a_terms and not a_terms[-1]:
            a_terms.pop()
        while b_terms and not b_terms[-1]:
            b_terms.pop()
    return int(total)


def _diff_range_job(args: tuple) -> int:
    *mlbk, backend_name = args
    be = GMP_BACKEND if backend_name == "gmpy2" else INT_BACKEND
    return _diff_range(*mlbk, be)


def count_diff(p: Params, backend: Backend | None = None, workers: int = 1) -> int:
    """Same sum as `count_diff_direct`, with every inner term carried along in k.

    With k positive coordinates the two factors are

        a_k     = sum_i (-1)^i C(k, i) C(L - iB, k)                = |W(k, L-k, B-1)|
        b_{m-k} = sum_i (-1)^i C(m-k, i) C(m-k + L - i(B+1), m-k)  = |W(m-k, L, B)|

    and stepping k -> k+1 multiplies each term by a small integer ratio:
    (L - iB - k)/(k + 1 - i) for a, (j - i)/(j + L - i(B+1)) for b with j = m-k.
    Each step is then one small multiply and one exact division per term
    instead of two fresh binomials.

    With workers > 1 the k range is cut into contiguous blocks, each seeded
    with fresh binomials and run in its own process.
    """
    m, L, B = canonicalize(Params(*p))
    if m == 0 or L == 0:
        return 1
    be = backend or default_backend()
    last = min(m, L)
    if workers <= 1 or last < 4 * workers:
        return _diff_range(m, L, B, 0, last, be)
    # more blocks than workers: late-k blocks carry fewer a-terms and finish early
    n_blocks = 4 * workers
    edges = [round(i * (last + 1) / n_blocks) for i in range(n_blocks + 1)]
    jobs = [(m, L, B, lo, hi - 1, be.name) for lo, hi in zip(edges, edges[1:]) if hi > lo]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_diff_range_job, jobs))


def q_value(p: Params) -> int:
    """2 max(U) + 1, where max(U) puts B on the heaviest coordinates greedily."""
    m, L, B = canonicalize(Params(*p))
    if m == 0 or L == 0 or B == 0:
        return 1
    base = 2 * B + 1
    t, r = divmod(L, B)
    q = pow_int(base, m) - pow_int(base, m - t) + 1
    if r:
        # r > 0 forces t < m under L <= mB
        q += 2 * r * pow_int(base, m - t - 1)
    return q


def set_counts(p: Params, backend: Backend | None = None, workers: int = 1) -> SetCounts:
    p = canonicalize(Params(*p))
    return SetCounts(
        u=count_w(p, backend),
        s=count_sum(p, backend),
        d=count_diff(p, backend, workers),
        q=q_value(p),
    )


def floor_6dp(x: float) -> Decimal:
    # repr() is the shortest string that round-trips, so no binary noise is floored in
    return Decimal(repr(x)).quantize(THETA_QUANTUM, rounding=ROUND_FLOOR)


def theta_from_counts(c: SetCounts) -> ThetaBound:
    if c.q < 3 or c.u < 2:
        raise DegenerateParamsError(f"theta undefined for u={c.u}, q={c.q}")
    ln_ratio = log_of(c.d).ln_value - log_of(c.s).ln_value
    ln_q = log_of(c.q).ln_value
    return ThetaBound(floor_6dp(1.0 + ln_ratio / ln_q), ln_ratio, ln_q)


def theta(p: Params) -> ThetaBound:
    return theta_from_counts(set_counts(p))


# Baseline: the simplex V(m, L) encoded with weights L_0 = 1, L_k = 2L L_{k-1} + 1.


@dataclass(frozen=True)
class BaselineWeights:
    weights: tuple[int, ...]


def _check_baseline(m: int, L: int) -> None:
    if m < 1 or L < 1:
        raise ValueError(f"baseline construction needs m >= 1 and L >= 1, got ({m}, {L})")


def baseline_weights(m: int, L: int) -> BaselineWeights:
    _check_baseline(m, L)
    w = [1]
    for _ in range(m - 1):
        w.append(2 * L * w[-1] + 1)
    return BaselineWeights(tuple(w))


def baseline_counts(m: int, L: int) -> SetCounts:
    _check_baseline(m, L)
    # V(m, L) is W(m, L, L): the per-coordinate cap never binds
    return SetCounts(
        u=binomial(m + L, m),
        s=binomial(m + 2 * L, m),
        d=count_diff(Params(m, L, L)),
        q=2 * L * baseline_weights(m, L).weights[-1] + 1,
    )


def baseline_theta(m: int, L: int) -> ThetaBound:
    return theta_from_counts(baseline_counts(m, L))
