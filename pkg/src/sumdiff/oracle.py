"""Brute-force ground truth for the closed forms, at sizes where enumeration is cheap.

Nothing here calls the inclusion-exclusion formulas except the cap check in
`enum_w`, which only decides whether to start enumerating.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from sumdiff.counts import BaselineWeights, Params, canonicalize, count_w, set_counts

DEFAULT_VECTOR_CAP = 10**6
DEFAULT_PAIR_CAP = 10**8

Vector = tuple[int, ...]


class CapExceededError(RuntimeError):
    """Enumeration would exceed the configured work limit."""


@dataclass(frozen=True)
class EnumeratedSet:
    params: Params
    vectors: list[Vector]
    integers: list[int]  # U, sorted ascending


def enum_w(p: Params, cap: int = DEFAULT_VECTOR_CAP) -> list[Vector]:
    """All vectors of W(m, L, B) in lexicographic order."""
    p = canonicalize(Params(*p))
    size = count_w(p)
    if size > cap:
        raise CapExceededError(f"|W{tuple(p)}| = {size} exceeds cap {cap}")
    m, L, B = p
    out: list[Vector] = []
    prefix: list[int] = []

    def walk(remaining: int) -> None:
        if len(prefix) == m:
            out.append(tuple(prefix))
            return
        for v in range(min(B, remaining) + 1):
            prefix.append(v)
            walk(remaining - v)
            prefix.pop()

    walk(L)
    return out


def encode_g(x: Sequence[int], B: int) -> int:
    base = 2 * B + 1
    return sum(c * base**k for k, c in enumerate(x))


def encode_f(x: Sequence[int], weights: BaselineWeights) -> int:
    if len(x) != len(weights.weights):
        raise ValueError("vector and weight lengths differ")
    return sum(c * w for c, w in zip(x, weights.weights))


def build_u(p: Params, cap: int = DEFAULT_VECTOR_CAP) -> EnumeratedSet:
    p = canonicalize(Params(*p))
    vectors = enum_w(p, cap)
    integers = sorted({encode_g(x, p.B) for x in vectors})
    if len(integers) != len(vectors):
        raise AssertionError(f"g is not injective on W{tuple(p)}")
    return EnumeratedSet(p, vectors, integers)


def _check_pairs(n: int, pair_cap: int) -> None:
    if n * n > pair_cap:
        raise CapExceededError(f"{n}^2 pair operations exceed cap {pair_cap}")


def sumset(values: Iterable[int], pair_cap: int = DEFAULT_PAIR_CAP) -> set[int]:
    vals = list(values)
    _check_pairs(len(vals), pair_cap)
    return {a + b for a in vals for b in vals}


def diffset(values: Iterable[int], pair_cap: int = DEFAULT_PAIR_CAP) -> set[int]:
    vals = list(values)
    _check_pairs(len(vals), pair_cap)
    return {a - b for a in vals for b in vals}


def sumset_size(u: EnumeratedSet, pair_cap: int = DEFAULT_PAIR_CAP) -> int:
    return len(sumset(u.integers, pair_cap))


def diffset_size(u: EnumeratedSet, pair_cap: int = DEFAULT_PAIR_CAP) -> int:
    return len(diffset(u.integers, pair_cap))


def _vector_pairs(vectors: list[Vector], op) -> set[Vector]:
    return {tuple(op(a, b) for a, b in zip(x, y)) for x in vectors for y in vectors}


def injective_on_pairs(vectors: list[Vector], encode, pair_cap: int = DEFAULT_PAIR_CAP) -> bool:
    """True iff `encode` keeps distinct vector sums and differences distinct."""
    _check_pairs(len(vectors), pair_cap)
    codes = [encode(x) for x in vectors]
    vec_sums = _vector_pairs(vectors, int.__add__)
    vec_diffs = _vector_pairs(vectors, int.__sub__)
    return len(sumset(codes, pair_cap)) == len(vec_sums) and len(diffset(codes, pair_cap)) == len(
        vec_diffs
    )


def check_injective(
    p: Params, cap: int = DEFAULT_VECTOR_CAP, pair_cap: int = DEFAULT_PAIR_CAP
) -> bool:
    p = canonicalize(Params(*p))
    vectors = enum_w(p, cap)
    return injective_on_pairs(vectors, lambda x: encode_g(x, p.B), pair_cap)


def enum_v(m: int, L: int, cap: int = DEFAULT_VECTOR_CAP) -> list[Vector]:
    """The simplex V(m, L); W with a cap that never binds."""
    return enum_w(Params(m, L, L), cap)


@dataclass(frozen=True)
class OracleReport:
    params: Params
    closed: dict[str, int]
    enumerated: dict[str, int]
    injective: bool

    @property
    def mismatches(self) -> list[str]:
        return [k for k in self.closed if self.closed[k] != self.enumerated[k]]

    @property
    def passed(self) -> bool:
        return self.injective and not self.mismatches


def validate(
    p: Params, cap: int = DEFAULT_VECTOR_CAP, pair_cap: int = DEFAULT_PAIR_CAP
) -> OracleReport:
    """Compare all four closed forms with enumeration and check injectivity of g."""
    p = canonicalize(Params(*p))
    es = build_u(p, cap)
    enumerated = {
        "u": len(es.integers),
        "s": sumset_size(es, pair_cap),
        "d": diffset_size(es, pair_cap),
        "q": 2 * es.integers[-1] + 1,
    }
    c = set_counts(p)
    closed = {"u": c.u, "s": c.s, "d": c.d, "q": c.q}
    return OracleReport(p, closed, enumerated, check_injective(p, cap, pair_cap))
