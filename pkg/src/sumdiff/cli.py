"""Command-line entry point: compute, search, oracle, certify.

Exit codes: 0 success, 1 bad arguments, 2 theta undefined for the parameters,
3 oracle cap exceeded or mismatch, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any

from sumdiff import __version__
from sumdiff.bigcomb import decimal_string, digest, sci_round
from sumdiff.counts import (
    DegenerateParamsError,
    Params,
    SetCounts,
    ThetaBound,
    canonicalize,
    set_counts,
    theta_from_counts,
)
from sumdiff.oracle import DEFAULT_PAIR_CAP, DEFAULT_VECTOR_CAP, CapExceededError, validate
from sumdiff.search import SearchResult, SearchSpec, sweep

EXIT_OK, EXIT_USAGE, EXIT_DEGENERATE, EXIT_ORACLE, EXIT_IO = 0, 1, 2, 3, 4

# counts with more digits than this are stored as sci + digest
MAX_INLINE_DIGITS = 4000
SCI_DIGITS = 10


def encode_count(x: int) -> str | dict[str, Any]:
    ndigits, sha = digest(x)
    if ndigits <= MAX_INLINE_DIGITS:
        return decimal_string(x)
    sci = sci_round(x, SCI_DIGITS)
    return {
        "sci": {"mantissa": str(sci.mantissa), "exponent10": sci.exponent10},
        "digits10": ndigits,
        "sha256_of_decimal": sha,
    }


def encode_theta(tb: ThetaBound | None) -> dict[str, Any] | None:
    if tb is None:
        return None
    return {"lower": str(tb.theta_lower), "ln_ratio": tb.ln_ratio, "ln_q": tb.ln_q}


def certificate(p: Params, c: SetCounts, tb: ThetaBound | None, elapsed: float) -> dict[str, Any]:
    return {
        "params": {"m": p.m, "L": p.L, "B": p.B},
        "counts": {k: encode_count(getattr(c, k)) for k in ("u", "s", "d", "q")},
        "theta": encode_theta(tb),
        "tool_version": __version__,
        "elapsed_seconds": elapsed,
    }


def build_certificate(p: Params) -> tuple[dict[str, Any], bool]:
    """Certificate for p and whether theta was defined."""
    p = canonicalize(p)
    t0 = time.perf_counter()
    c = set_counts(p)
    try:
        tb = theta_from_counts(c)
    except DegenerateParamsError:
        tb = None
    return certificate(p, c, tb, time.perf_counter() - t0), tb is not None


def search_to_json(res: SearchResult) -> dict[str, Any]:
    return {
        "ranked": [
            {
                "params": {"m": c.params.m, "L": c.params.L, "B": c.params.B},
                "theta_est": c.theta_est,
                "theta_exact": encode_theta(c.theta_exact),
                "near_grid": c.near_grid,
            }
            for c in res.ranked
        ],
        "skipped": [
            {"params": {"m": p.m, "L": p.L, "B": p.B}, "reason": why} for p, why in res.skipped
        ],
    }


def parse_range(text: str) -> tuple[int, int]:
    """'lo:hi' inclusive, or a single integer."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo:hi' or an integer, got {text!r}")


def parse_int_list(text: str) -> tuple[int, ...]:
    vals: list[int] = []
    for part in text.split(","):
        lo, hi = parse_range(part)
        vals.extend(range(lo, hi + 1))
    return tuple(vals)


def non_negative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def dump(obj: Any, out=None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out is None:
        print(text)
    else:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=non_negative, required=True, help="dimension")
    p.add_argument("--L", type=non_negative, required=True, help="coordinate-sum cap")
    p.add_argument("--B", type=non_negative, required=True, help="per-coordinate cap")


def cmd_compute(args) -> int:
    cert, ok = build_certificate(Params(args.m, args.L, args.B))
    dump(cert, args.out)
    return EXIT_OK if ok else EXIT_DEGENERATE


def cmd_certify(args) -> int:
    cert, ok = build_certificate(Params(args.m, args.L, args.B))
    dump(cert, args.out)
    print(f"wrote {args.out} in {cert['elapsed_seconds']:.3f}s", file=sys.stderr)
    return EXIT_OK if ok else EXIT_DEGENERATE


def cmd_search(args) -> int:
    spec = SearchSpec(args.m, args.L, args.B, args.top, args.confirm)
    dump(search_to_json(sweep(spec, workers=args.workers)))
    return EXIT_OK


def cmd_oracle(args) -> int:
    p = Params(args.m, args.L, args.B)
    try:
        rep = validate(p, args.cap, args.pair_cap)
    except CapExceededError as exc:
        dump({"params": {"m": p.m, "L": p.L, "B": p.B}, "status": "CAP_EXCEEDED", "error": str(exc)})
        return EXIT_ORACLE
    dump(
        {
            "params": {"m": rep.params.m, "L": rep.params.L, "B": rep.params.B},
            "quantities": {
                k: {
                    "closed_form": str(rep.closed[k]),
                    "enumerated": str(rep.enumerated[k]),
                    "match": rep.closed[k] == rep.enumerated[k],
                }
                for k in ("u", "s", "d", "q")
            },
            "injective": rep.injective,
            "status": "PASS" if rep.passed else "FAIL",
        }
    )
    return EXIT_OK if rep.passed else EXIT_ORACLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sumdiff", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="exact counts and theta for one (m, L, B)")
    _add_params(p)
    p.add_argument("--out", help="write the certificate here instead of stdout")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("certify", help="like compute, always written to a file")
    _add_params(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("search", help="rank a grid of (m, L, B) by theta")
    p.add_argument("--m", type=parse_range, required=True, help="lo:hi inclusive")
    p.add_argument("--L", type=parse_int_list, required=True, help="values, e.g. 64 or 32,64 or 60:64")
    p.add_argument("--B", type=parse_range, required=True, help="lo:hi inclusive")
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--confirm", action="store_true", help="re-derive certified theta for the top list")
    p.add_argument("--workers", type=int, default=None, help="defaults to $SUMDIFF_WORKERS or cpu count")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("oracle", help="check closed forms against brute-force enumeration")
    _add_params(p)
    p.add_argument("--cap", type=int, default=DEFAULT_VECTOR_CAP, help="max |W| to enumerate")
    p.add_argument("--pair-cap", type=int, default=DEFAULT_PAIR_CAP, help="max pair operations")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors, which would read as "theta undefined"
        return EXIT_USAGE if exc.code == 2 else exc.code
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE if isinstance(exc, DegenerateParamsError) else EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
