"""Exact rational helpers.

All arithmetic in the package runs on ``gmpy2.mpq``. This module holds the
coercions, the ``"p/q"`` text form used in JSON output, and dyadic rounding.
"""

from fractions import Fraction

import gmpy2
from gmpy2 import mpq

Q = mpq

ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)


def as_q(x) -> mpq:
    """Coerce an int, str ("3", "-1/2", "0.25"), Fraction or mpq to mpq.

    Floats are rejected: they would silently smuggle binary rounding into
    quantities that are meant to be exact.
    """
    if isinstance(x, bool):
        return mpq(int(x))
    if isinstance(x, (int, type(ZERO))):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if "." in s and "/" not in s:
            return mpq(Fraction(s).numerator, Fraction(s).denominator)
        return mpq(s)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals")
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def fmt_q(x) -> str:
    """Serialize as ``"p/q"`` (always with an explicit denominator)."""
    x = as_q(x)
    return f"{x.numerator}/{x.denominator}"


def parse_q(s: str) -> mpq:
    return as_q(s)


def floor_q(x) -> int:
    return int(gmpy2.f_div(x.numerator, x.denominator))


def ceil_q(x) -> int:
    return int(gmpy2.c_div(x.numerator, x.denominator))


def pow2(k: int) -> mpq:
    """2**k as an exact rational, k may be negative."""
    if k >= 0:
        return mpq(1 << k)
    return mpq(1, 1 << (-k))


def dyadic_floor(x, bits: int) -> mpq:
    """Largest multiple of 2**-bits that is <= x."""
    return mpq(floor_q(x * (1 << bits)), 1 << bits)


def dyadic_ceil(x, bits: int) -> mpq:
    return mpq(ceil_q(x * (1 << bits)), 1 << bits)


def to_float(x) -> float:
    return float(as_q(x))
