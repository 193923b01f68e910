"""Dedekind reals as nested rational-interval approximation sequences.

A :class:`RealNum` maps fuel ``n`` to a :class:`RatInterval` enclosing the real;
enclosures are nested. Arithmetic is exact rational interval arithmetic; exp,
log, sin and sqrt use rational series or integer square roots with explicit
remainder bounds, so nothing here touches floating point.

Partial operations never raise. When an input enclosure leaves the domain
(a divisor interval containing 0, log of an interval meeting (-inf, 0]), the
result at that fuel is the whole-line fallback ``[-2**n, 2**n]`` marked
``defined=False``. Comparisons and observables treat undefined enclosures as
carrying no information, which is how missing mass shows up downstream.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Optional

import gmpy2

from .rational import Q, ZERO, ONE, as_q, ceil_q, dyadic_ceil, dyadic_floor, floor_q, pow2
from .sier import Sier, sier_from_bool


class RatInterval:
    """Closed rational interval ``[lo, hi]``.

    ``defined`` is False only for fallback enclosures produced by a partial
    operation outside its domain; such an interval is not a sound enclosure.
    """

    __slots__ = ("lo", "hi", "defined")

    def __init__(self, lo, hi, defined: bool = True):
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.defined = defined

    @classmethod
    def point(cls, q) -> "RatInterval":
        q = as_q(q)
        return cls(q, q)

    @classmethod
    def of(cls, lo, hi) -> "RatInterval":
        return cls(as_q(lo), as_q(hi))

    @property
    def width(self):
        return self.hi - self.lo

    def mid(self):
        return (self.lo + self.hi) / 2

    def contains(self, q) -> bool:
        return self.lo <= q <= self.hi

    def subset_of(self, other: "RatInterval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersect(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(max(self.lo, other.lo), min(self.hi, other.hi), self.defined and other.defined)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatInterval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi and self.defined == other.defined

    def __hash__(self) -> int:
        return hash((self.lo, self.hi, self.defined))

    def __repr__(self) -> str:
        tag = "" if self.defined else ", undefined"
        return f"[{self.lo}, {self.hi}{tag}]"


def fallback(n: int) -> RatInterval:
    """Whole-line stand-in at fuel ``n`` for an undefined partial result."""
    b = Q(1 << n)
    return RatInterval(-b, b, False)


# -- interval arithmetic -----------------------------------------------------

def i_add(x: RatInterval, y: RatInterval) -> RatInterval:
    return RatInterval(x.lo + y.lo, x.hi + y.hi, x.defined and y.defined)


def i_sub(x: RatInterval, y: RatInterval) -> RatInterval:
    return RatInterval(x.lo - y.hi, x.hi - y.lo, x.defined and y.defined)


def i_neg(x: RatInterval) -> RatInterval:
    return RatInterval(-x.hi, -x.lo, x.defined)


def i_mul(x: RatInterval, y: RatInterval) -> RatInterval:
    a, b, c, d = x.lo, x.hi, y.lo, y.hi
    if a >= 0 and c >= 0:
        return RatInterval(a * c, b * d, x.defined and y.defined)
    ps = (a * c, a * d, b * c, b * d)
    return RatInterval(min(ps), max(ps), x.defined and y.defined)


def i_div(x: RatInterval, y: RatInterval, n: int) -> RatInterval:
    if not (x.defined and y.defined) or y.lo <= 0 <= y.hi:
        return fallback(n)
    return i_mul(x, RatInterval(1 / y.hi, 1 / y.lo))


# -- real numbers ------------------------------------------------------------

class RealNum:
    """A real number given by nested rational enclosures, one per fuel."""

    __slots__ = ("_fn", "_memo")

    def __init__(self, fn: Callable[[int], RatInterval]):
        self._fn = fn
        self._memo: dict[int, RatInterval] = {}

    def approx(self, n: int) -> RatInterval:
        try:
            return self._memo[n]
        except KeyError:
            if n < 0:
                raise ValueError("fuel must be >= 0") from None
            v = self._fn(n)
            self._memo[n] = v
            return v

    def __repr__(self) -> str:
        return f"RealNum(approx(8)={self.approx(8)})"


class _BoxReal(RealNum):
    """Constant enclosure: a rational literal, or an interval standing for every
    point in it (used to obtain interval extensions of observables)."""

    __slots__ = ("box",)

    def __init__(self, box: RatInterval):
        self.box = box

    def approx(self, n: int) -> RatInterval:
        return self.box

    def __repr__(self) -> str:
        return f"RealNum{self.box!r}"


def real_from_rat(q) -> RealNum:
    return _BoxReal(RatInterval.point(as_q(q)))


def real_box(box: RatInterval) -> RealNum:
    return _BoxReal(box)


def is_box(x: RealNum) -> bool:
    return isinstance(x, _BoxReal)


@lru_cache(maxsize=1 << 16)
def dyadic_box(i: int, j: int) -> RealNum:
    """Box-constant real on ``[i/2**j, (i+1)/2**j]``."""
    d = 1 << j
    return _BoxReal(RatInterval(Q(i, d), Q(i + 1, d)))


def _binary(op, x: RealNum, y: RealNum) -> RealNum:
    if isinstance(x, _BoxReal) and isinstance(y, _BoxReal):
        return _BoxReal(op(x.box, y.box))
    return RealNum(lambda n: op(x.approx(n), y.approx(n)))


def real_add(x: RealNum, y: RealNum) -> RealNum:
    return _binary(i_add, x, y)


def real_sub(x: RealNum, y: RealNum) -> RealNum:
    return _binary(i_sub, x, y)


def real_mul(x: RealNum, y: RealNum) -> RealNum:
    return _binary(i_mul, x, y)


def real_neg(x: RealNum) -> RealNum:
    if isinstance(x, _BoxReal):
        return _BoxReal(i_neg(x.box))
    return RealNum(lambda n: i_neg(x.approx(n)))


def real_div(x: RealNum, y: RealNum) -> RealNum:
    if isinstance(x, _BoxReal) and isinstance(y, _BoxReal):
        if x.box.defined and y.box.defined and not (y.box.lo <= 0 <= y.box.hi):
            return _BoxReal(i_div(x.box, y.box, 0))
    return RealNum(lambda n: i_div(x.approx(n), y.approx(n), n))


def real_lt(x: RealNum, y: RealNum) -> tuple[Sier, Sier]:
    """Semi-decide ``x < y`` and ``y < x``; both stay false when x = y."""

    def lt(a: RealNum, b: RealNum) -> Sier:
        if isinstance(a, _BoxReal) and isinstance(b, _BoxReal):
            ab, bb = a.box, b.box
            return sier_from_bool(ab.defined and bb.defined and ab.hi < bb.lo)

        def fn(n: int) -> bool:
            ai, bi = a.approx(n), b.approx(n)
            return ai.defined and bi.defined and ai.hi < bi.lo

        return Sier(fn)

    return lt(x, y), lt(y, x)


def interval_extend(f: Callable[[RealNum], RealNum], box: RatInterval, n: int) -> RatInterval:
    """Enclosure of ``f`` over ``box``: run f on the box-constant real at fuel n."""
    return f(real_box(box)).approx(n)


# -- elementary functions ----------------------------------------------------

def _elementary(x: RealNum, enclose: Callable[[RatInterval, int], Optional[RatInterval]]) -> RealNum:
    """Lift a sound interval enclosure (slack <= 2**-n at precision n) to a
    nested RealNum by intersecting with the previous fuel's sound result."""

    def fn(n: int) -> RatInterval:
        iv = x.approx(n)
        if not iv.defined:
            return fallback(n)
        r = enclose(iv, n + 2)
        if r is None:
            return fallback(n)
        if n > 0:
            prev = out.approx(n - 1)
            if prev.defined:
                lo, hi = max(r.lo, prev.lo), min(r.hi, prev.hi)
                if lo <= hi:
                    r = RatInterval(lo, hi)
        return r

    out = RealNum(fn)
    return out


def _mag_bits(q) -> int:
    return max(1, ceil_q(abs(q)).bit_length())


def exp_bounds(q, p: int) -> tuple:
    """Rational (lo, hi) with lo <= exp(q) <= hi and hi - lo <= 2**-p."""
    q = as_q(q)
    if q == 0:
        return ONE, ONE
    if q < 0:
        lo, hi = exp_bounds(-q, p + 2)
        return dyadic_floor(1 / hi, p + 2), dyadic_ceil(1 / lo, p + 2)
    s = _mag_bits(q) + 1
    mag = (3 * ceil_q(q)) // 2 + 2
    w = p + s + mag + 8
    r = q / (1 << s)
    eps = pow2(-w)
    term = ONE
    total = ONE
    k = 0
    while True:
        k += 1
        term = term * r / k
        total += term
        rem = 2 * term * r / (k + 1)
        if rem < eps:
            break
    lo = dyadic_floor(total, w)
    hi = dyadic_ceil(total + rem, w)
    for _ in range(s):
        lo = dyadic_floor(lo * lo, w)
        hi = dyadic_ceil(hi * hi, w)
    return lo, hi


def _atanh_bounds(z, w: int) -> tuple:
    """atanh(z) for 0 <= z <= 1/3, enclosed to 2**-w."""
    if z == 0:
        return ZERO, ZERO
    eps = pow2(-w)
    z2 = z * z
    power = z
    total = ZERO
    k = 0
    while True:
        total += power / (2 * k + 1)
        power *= z2
        k += 1
        rem = power / (2 * k + 1) * Q(9, 8)
        if rem < eps:
            break
    return dyadic_floor(total, w + 2), dyadic_ceil(total + rem, w + 2)


@lru_cache(maxsize=64)
def ln2_bounds(w: int) -> tuple:
    lo, hi = _atanh_bounds(Q(1, 3), w + 2)
    return 2 * lo, 2 * hi


def log_bounds(q, p: int) -> tuple:
    """Enclosure of ln(q) for rational q > 0, width about 2**-p."""
    q = as_q(q)
    if q <= 0:
        raise ValueError("log of a nonpositive rational")
    e = q.numerator.bit_length() - q.denominator.bit_length()
    m = q / pow2(e)
    if m < 1:
        e -= 1
        m *= 2
    elif m >= 2:
        e += 1
        m /= 2
    w = p + abs(e).bit_length() + 4
    z = (m - 1) / (m + 1)
    a_lo, a_hi = _atanh_bounds(z, w)
    l_lo, l_hi = ln2_bounds(w)
    if e >= 0:
        return e * l_lo + 2 * a_lo, e * l_hi + 2 * a_hi
    return e * l_hi + 2 * a_lo, e * l_lo + 2 * a_hi


def sqrt_bounds(q, p: int) -> tuple:
    q = as_q(q)
    if q < 0:
        raise ValueError("sqrt of a negative rational")
    scaled = q * (1 << (2 * p))
    fl = floor_q(scaled)
    r = int(gmpy2.isqrt(fl))
    lo = Q(r, 1 << p)
    if r * r == scaled:
        return lo, lo
    return lo, Q(r + 1, 1 << p)


def _arctan_recip(k: int, w: int) -> tuple:
    """Bracket atan(1/k) (k >= 2) by consecutive alternating partial sums."""
    x = Q(1, k)
    x2 = x * x
    power = x
    total = ZERO
    i = 0
    eps = pow2(-w)
    while True:
        term = power / (2 * i + 1)
        if i % 2 == 0:
            total += term
        else:
            total -= term
        power *= x2
        i += 1
        nxt = power / (2 * i + 1)
        if nxt < eps:
            break
    # the next omitted term has sign (-1)**i
    if i % 2 == 0:
        return total, total + nxt
    return total - nxt, total


@lru_cache(maxsize=64)
def pi_bounds(w: int) -> tuple:
    """pi = 16 atan(1/5) - 4 atan(1/239), enclosed to about 2**-w."""
    a_lo, a_hi = _arctan_recip(5, w + 6)
    b_lo, b_hi = _arctan_recip(239, w + 6)
    return dyadic_floor(16 * a_lo - 4 * b_hi, w + 2), dyadic_ceil(16 * a_hi - 4 * b_lo, w + 2)


def _sin_taylor(x, w: int) -> tuple:
    eps = pow2(-w)
    total = ZERO
    term = x
    k = 1
    while True:
        total += term
        term = -term * x * x / ((k + 1) * (k + 2))
        k += 2
        # |next term| is the Lagrange bound for the omitted tail
        if abs(term) < eps:
            bound = abs(term)
            break
    return dyadic_floor(total - bound, w + 2), dyadic_ceil(total + bound, w + 2)


def sin_interval(lo, hi, p: int) -> tuple:
    """Enclosure of sin over [lo, hi] with endpoint slack about 2**-p."""
    if hi - lo >= 7:
        return -ONE, ONE
    coarse, _ = pi_bounds(64)
    k = floor_q(lo / (2 * coarse))
    pl, ph = pi_bounds(p + 6 + abs(k).bit_length())
    # any integer k is sound: shift by 2k*pi using the enclosure of pi
    if k >= 0:
        a, b = lo - 2 * k * ph, hi - 2 * k * pl
    else:
        a, b = lo - 2 * k * pl, hi - 2 * k * ph
    alo, ahi = _sin_taylor(a, p + 2)
    blo, bhi = _sin_taylor(b, p + 2)
    rlo, rhi = min(alo, blo), max(ahi, bhi)
    for m in range(floor_q(a / pl) - 2, ceil_q(b / pl) + 2):
        c = Q(2 * m + 1, 2)
        c1, c2 = (c * pl, c * ph) if c > 0 else (c * ph, c * pl)
        if c2 >= a and c1 <= b:
            if m % 2 == 0:
                rhi = ONE
            else:
                rlo = -ONE
    return max(rlo, -ONE), min(rhi, ONE)


def _enclose_exp(iv: RatInterval, p: int) -> RatInterval:
    lo, _ = exp_bounds(iv.lo, p)
    if iv.hi == iv.lo:
        return RatInterval(lo, _)
    _, hi = exp_bounds(iv.hi, p)
    return RatInterval(lo, hi)


def _enclose_log(iv: RatInterval, p: int) -> Optional[RatInterval]:
    if iv.lo <= 0:
        return None
    lo, hi = log_bounds(iv.lo, p)
    if iv.hi != iv.lo:
        _, hi = log_bounds(iv.hi, p)
    return RatInterval(lo, hi)


def _enclose_sqrt(iv: RatInterval, p: int) -> Optional[RatInterval]:
    if iv.lo < 0:
        return None
    lo, hi = sqrt_bounds(iv.lo, p)
    if iv.hi != iv.lo:
        _, hi = sqrt_bounds(iv.hi, p)
    return RatInterval(lo, hi)


def _enclose_sin(iv: RatInterval, p: int) -> RatInterval:
    lo, hi = sin_interval(iv.lo, iv.hi, p)
    return RatInterval(lo, hi)


def real_exp(x: RealNum) -> RealNum:
    return _elementary(x, _enclose_exp)


def real_log(x: RealNum) -> RealNum:
    return _elementary(x, _enclose_log)


def real_sin(x: RealNum) -> RealNum:
    return _elementary(x, _enclose_sin)


def real_sqrt(x: RealNum) -> RealNum:
    return _elementary(x, _enclose_sqrt)


def real_from_sequence(fn: Callable[[int], RatInterval]) -> RealNum:
    """Wrap a caller-supplied enclosure sequence (assumed nested)."""
    return RealNum(fn)
