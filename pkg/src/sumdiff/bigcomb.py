"""Big-integer kernels: binomials, powers, logs and decimal rounding of huge counts.

Everything here takes plain Python ints. Floats only appear in `log_of`, and
only after the exact value is known.
"""

from __future__ import annotations

import hashlib
import math
import operator
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Context, Decimal
from typing import Any, Callable

try:
    import gmpy2
except ImportError:  # pure-int fallback, same results, slower at large sizes
    gmpy2 = None

LN2 = math.log(2.0)

# top bits kept by log_of; the dropped tail perturbs x by < 2**-(LOG_TOP_BITS-1)
LOG_TOP_BITS = 64

# Guaranteed relative error of LogMagnitude.ln_value for x >= 2. Two roundings
# of the double log plus the shift*ln2 product stay below 2**-50 once
# ln(x) >= 0.69; 2**-48 leaves margin and sits well inside 2**-40.
LOG_REL_ERR = 2.0 ** -48


def binomial(n: int, k: int) -> int:
    """C(n, k) for non-negative n, k; zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial needs non-negative arguments, got ({n}, {k})")
    if k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class Backend:
    """Integer type used inside the long exact loops; results always leave as int."""

    name: str
    big: Callable[[int], Any]
    comb: Callable[[int, int], Any]
    divexact: Callable[[Any, Any], Any]


INT_BACKEND = Backend("int", int, math.comb, operator.floordiv)
GMP_BACKEND = (
    Backend("gmpy2", gmpy2.mpz, gmpy2.comb, gmpy2.divexact) if gmpy2 is not None else None
)


def default_backend() -> Backend:
    return GMP_BACKEND or INT_BACKEND


def pow_int(base: int, exp: int) -> int:
    if base < 0 or exp < 0:
        raise ValueError(f"pow_int needs non-negative arguments, got ({base}, {exp})")
    # 0**0 == 1 in Python, which is the convention we want
    return base**exp


@dataclass(frozen=True)
class LogMagnitude:
    ln_value: float
    rel_err_bound: float


def log_of(x: int) -> LogMagnitude:
    """Natural log of a positive integer from its leading 64 bits and bit length."""
    if x <= 0:
        raise ValueError("log_of is undefined for x <= 0")
    if x == 1:
        return LogMagnitude(0.0, 0.0)
    shift = max(x.bit_length() - LOG_TOP_BITS, 0)
    top = x >> shift
    return LogMagnitude(math.log(top) + shift * LN2, LOG_REL_ERR)


@dataclass(frozen=True)
class SciApprox:
    """x ~= mantissa * 10**exponent10, mantissa carries exactly the requested digits."""

    mantissa: Decimal
    exponent10: int

    def __str__(self) -> str:
        return f"{self.mantissa}e{self.exponent10}"

    def to_decimal(self) -> Decimal:
        return self.mantissa.scaleb(self.exponent10)


def sci_round(x: int, sig_digits: int = 10) -> SciApprox:
    if x <= 0:
        raise ValueError("sci_round is undefined for x <= 0")
    if sig_digits < 1:
        raise ValueError("sig_digits must be >= 1")
    ctx = Context(prec=sig_digits, rounding=ROUND_HALF_EVEN, Emax=10**12, Emin=-(10**12))
    rounded = ctx.plus(Decimal(x))
    # adjusted() is the exponent of the leading digit, after any carry
    exp10 = rounded.adjusted()
    mantissa = rounded.scaleb(-exp10, context=ctx)
    # pad short inputs, e.g. 7 at 3 digits -> 7.00
    mantissa = mantissa.quantize(Decimal(1).scaleb(1 - sig_digits), context=ctx)
    return SciApprox(mantissa, exp10)


def decimal_string(x: int) -> str:
    # Decimal conversion sidesteps the interpreter's int->str digit limit
    return str(Decimal(x))


def digest(x: int) -> tuple[int, str]:
    """(number of decimal digits, sha256 hex of the decimal string)."""
    s = decimal_string(x)
    return len(s.lstrip("-")), hashlib.sha256(s.encode("ascii")).hexdigest()
