"""Lower reals: monotone rational approximations from below.

A :class:`LowerReal` is a nondecreasing sequence of exact rationals whose
supremum is the value (an unbounded sequence stands for +infinity). The cut
``{q | q < x}`` is recovered by :func:`lr_lt_rat`. :class:`LowerRealNN` is the
nonnegative subtype; constructing one clamps every approximant at 0.

Embedded rationals use the constant sequence, so arithmetic on them is exact
and the strict comparison keeps ``q < q`` false.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .rational import ZERO, as_q
from .sier import Sier, sier_from_bool


class LowerReal:
    __slots__ = ("_fn", "_memo")

    def __init__(self, fn: Callable[[int], object]):
        self._fn = fn
        self._memo: dict = {}

    def approx(self, n: int):
        try:
            return self._memo[n]
        except KeyError:
            if n < 0:
                raise ValueError("fuel must be >= 0") from None
            v = self._compute(n)
            self._memo[n] = v
            return v

    def _compute(self, n: int):
        return as_q(self._fn(n))

    def table(self, fuel: int) -> list:
        return [self.approx(n) for n in range(fuel + 1)]

    def __repr__(self) -> str:
        return f"{type(self).__name__}(approx(8)={self.approx(8)})"


class LowerRealNN(LowerReal):
    """Nonnegative lower real; approximants are clamped at 0."""

    __slots__ = ()

    def _compute(self, n: int):
        v = as_q(self._fn(n))
        return v if v > 0 else ZERO


class _Const(LowerRealNN):
    __slots__ = ("_q",)

    def __init__(self, q):
        self._q = q

    def approx(self, n: int):
        if n < 0:
            raise ValueError("fuel must be >= 0")
        return self._q


class _ConstSigned(LowerReal):
    __slots__ = ("_q",)

    def __init__(self, q):
        self._q = q

    def approx(self, n: int):
        if n < 0:
            raise ValueError("fuel must be >= 0")
        return self._q


def lr_from_rat(q) -> LowerReal:
    """Embed a rational; the result is a :class:`LowerRealNN` when q >= 0."""
    q = as_q(q)
    if q >= 0:
        return _Const(q)
    return _ConstSigned(q)


LR_ZERO = lr_from_rat(0)
LR_ONE = lr_from_rat(1)


def is_const(x: LowerReal) -> bool:
    return isinstance(x, (_Const, _ConstSigned))


def nonneg(x: LowerReal) -> LowerRealNN:
    """Clamp pointwise at 0; preserves monotonicity and a nonnegative sup."""
    if isinstance(x, LowerRealNN):
        return x
    if is_const(x):
        return lr_from_rat(max(x._q, ZERO))
    return LowerRealNN(x.approx)


def _both_nn(*xs: LowerReal) -> bool:
    return all(isinstance(x, LowerRealNN) for x in xs)


def _wrap(fn, nn: bool) -> LowerReal:
    return LowerRealNN(fn) if nn else LowerReal(fn)


def lr_add(x: LowerReal, y: LowerReal) -> LowerReal:
    if is_const(x) and is_const(y):
        return lr_from_rat(x._q + y._q)
    if is_const(y) and y._q == 0:
        return x
    if is_const(x) and x._q == 0:
        return y
    return _wrap(lambda n: x.approx(n) + y.approx(n), _both_nn(x, y))


def lr_sum(xs: Iterable[LowerReal]) -> LowerReal:
    acc = LR_ZERO
    for x in xs:
        acc = lr_add(acc, x)
    return acc


def lr_mul_nn(x: LowerRealNN, y: LowerRealNN) -> LowerRealNN:
    """Product on nonnegative lower reals (no extension to signed ones exists)."""
    if not _both_nn(x, y):
        raise TypeError("lr_mul_nn needs nonnegative lower reals")
    if is_const(x) and is_const(y):
        return lr_from_rat(x._q * y._q)
    return LowerRealNN(lambda n: x.approx(n) * y.approx(n))


def lr_scale(q, x: LowerRealNN) -> LowerRealNN:
    q = as_q(q)
    if q < 0:
        raise ValueError("scalar must be >= 0")
    if not isinstance(x, LowerRealNN):
        raise TypeError("lr_scale needs a nonnegative lower real")
    if q == 0:
        return LR_ZERO
    if q == 1:
        return x
    if is_const(x):
        return lr_from_rat(q * x._q)
    return LowerRealNN(lambda n: q * x.approx(n))


def lr_meet(x: LowerReal, y: LowerReal) -> LowerReal:
    if is_const(x) and is_const(y):
        return lr_from_rat(min(x._q, y._q))
    return _wrap(lambda n: min(x.approx(n), y.approx(n)), _both_nn(x, y))


def lr_join2(x: LowerReal, y: LowerReal) -> LowerReal:
    if is_const(x) and is_const(y):
        return lr_from_rat(max(x._q, y._q))
    nn = isinstance(x, LowerRealNN) or isinstance(y, LowerRealNN)
    return _wrap(lambda n: max(x.approx(n), y.approx(n)), nn)


def lr_countable_join(family: Callable[[int], LowerReal], nonnegative: bool = False) -> LowerReal:
    """Dovetailed enumerable join: approx(n) = max_{i <= n} family(i).approx(n)."""
    members: dict[int, LowerReal] = {}

    def member(i: int) -> LowerReal:
        m = members.get(i)
        if m is None:
            m = members[i] = family(i)
        return m

    return _wrap(lambda n: max(member(i).approx(n) for i in range(n + 1)), nonnegative)


def lr_lt_rat(q, x: LowerReal) -> Sier:
    """The semi-decidable predicate ``q < x``."""
    q = as_q(q)
    if is_const(x):
        return sier_from_bool(q < x._q)
    return Sier(lambda n: q < x.approx(n))


def cumulative_max(term: Callable[[int], object]) -> LowerRealNN:
    """``approx(k) = max(0, term(0), ..., term(k))``, computed incrementally.

    Used wherever a per-fuel estimate is a sound lower bound but not itself
    monotone in fuel.
    """
    best: list = []

    def fn(k: int):
        while len(best) <= k:
            j = len(best)
            t = as_q(term(j))
            prev = best[-1] if best else ZERO
            best.append(t if t > prev else prev)
        return best[k]

    return LowerRealNN(fn)
