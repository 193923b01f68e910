"""The sub-probability Giry monad as lower-integral functionals.

A measure is anything with ``integrate(f: Observable) -> LowerRealNN``. The
constructors here keep the monad operations lazy: nothing is integrated until
an approximant is requested.
"""

from __future__ import annotations

from collections import OrderedDict
from typing import Any, Callable, Iterable, Mapping

from .interval import dyadic_box
from .lowreal import (
    LR_ZERO,
    LowerRealNN,
    cumulative_max,
    is_const,
    lr_from_rat,
    nonneg,
)
from .measure import ONE_OBS, DiscreteValuation, Observable
from .rational import ONE, Q, ZERO, as_q
from .sier import Sier


class GiryMeasure:
    subprob = True

    def integrate(self, f: Observable) -> LowerRealNN:
        raise NotImplementedError


class UnitMeasure(GiryMeasure):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def integrate(self, f):
        return nonneg(f.eval(self.value))

    def __repr__(self):
        return f"UnitMeasure({self.value!r})"


class BottomMeasure(GiryMeasure):
    def integrate(self, f):
        return LR_ZERO

    def __repr__(self):
        return "BottomMeasure()"


_BOTTOM = BottomMeasure()


class DiscreteMeasure(GiryMeasure):
    """Finite weighted sum of point masses."""

    def __init__(self, items: list):
        self.items = items

    def integrate(self, f):
        terms = [(w, nonneg(f.eval(a))) for a, w in self.items]
        if all(is_const(e) for _, e in terms):
            return lr_from_rat(sum((w * e.approx(0) for w, e in terms), ZERO))
        return LowerRealNN(lambda n: sum((w * e.approx(n) for w, e in terms), ZERO))

    def __repr__(self):
        return f"DiscreteMeasure({self.items!r})"


class Uniform01(GiryMeasure):
    """Uniform distribution on (0, 1) by dyadic lower Riemann sums."""

    def integrate(self, f):
        def term(j):
            total = ZERO
            for i in range(1 << j):
                v = f.ext_real(dyadic_box(i, j), j)
                if v > 0:
                    total += v
            return total / (1 << j)
        return cumulative_max(term)

    def __repr__(self):
        return "Uniform01()"


_UNIFORM = Uniform01()


class BindMeasure(GiryMeasure):
    def __init__(self, x: GiryMeasure, k: Callable[[Any], GiryMeasure]):
        self.x, self.k = x, k

    def integrate(self, f):
        k = self.k
        return self.x.integrate(Observable(lambda a: k(a).integrate(f)))


class StrengthMeasure(GiryMeasure):
    """x > y: the pair measure integrating the left factor outermost."""

    def __init__(self, x: GiryMeasure, y: GiryMeasure):
        self.x, self.y = x, y

    def integrate(self, f):
        y = self.y
        return self.x.integrate(
            Observable(lambda a: y.integrate(Observable(lambda b: f.eval((a, b))))))


class CostrengthMeasure(GiryMeasure):
    """x < y: the pair measure integrating the right factor outermost."""

    def __init__(self, x: GiryMeasure, y: GiryMeasure):
        self.x, self.y = x, y

    def integrate(self, f):
        x = self.x
        return self.y.integrate(
            Observable(lambda b: x.integrate(Observable(lambda a: f.eval((a, b))))))


class KleeneLub(GiryMeasure):
    """Join of an increasing chain of measures.

    By default ``approx(n) = max_{i <= n} chain(i).integrate(f).approx(n)``.
    With ``diagonal=True`` member i is only read at fuel i; this is still a
    sound, monotone lower bound with the same supremum when every member's
    approximants grow with i as well as with fuel (true of the recursion
    chains built by the Rml evaluator), and costs one member read per fuel.
    """

    def __init__(self, chain: Callable[[int], GiryMeasure], diagonal: bool = False):
        self._chain = chain
        self._members: dict[int, GiryMeasure] = {}
        self.diagonal = diagonal

    def member(self, i: int) -> GiryMeasure:
        m = self._members.get(i)
        if m is None:
            m = self._members[i] = self._chain(i)
        return m

    def integrate(self, f):
        if self.diagonal:
            return cumulative_max(lambda i: self.member(i).integrate(f).approx(i))
        return LowerRealNN(lambda n: max(self.member(i).integrate(f).approx(n) for i in range(n + 1)))


class LtMeasure(GiryMeasure):
    """Measure on booleans decided by a pair of separation witnesses.

    ``s_true`` fires when the comparison is known to hold, ``s_false`` when it
    is known to fail; until one fires the measure has no mass.
    """

    def __init__(self, s_true: Sier, s_false: Sier):
        self.s_true, self.s_false = s_true, s_false

    def integrate(self, f):
        st, sf = self.s_true, self.s_false
        ft = nonneg(f.eval(True))
        ff = nonneg(f.eval(False))

        def fn(n):
            if st.approx(n):
                return ft.approx(n)
            if sf.approx(n):
                return ff.approx(n)
            return ZERO
        return LowerRealNN(fn)


class MemoMeasure(GiryMeasure):
    """Caches integrals per observable object (small LRU)."""

    def __init__(self, inner: GiryMeasure, size: int = 8):
        self.inner = inner
        self._size = size
        self._cache: OrderedDict = OrderedDict()

    def integrate(self, f):
        key = id(f)
        hit = self._cache.get(key)
        if hit is not None and hit[0] is f:
            self._cache.move_to_end(key)
            return hit[1]
        r = self.inner.integrate(f)
        self._cache[key] = (f, r)
        if len(self._cache) > self._size:
            self._cache.popitem(last=False)
        return r


# -- constructors --------------------------------------------------------------

def g_unit(a) -> GiryMeasure:
    return UnitMeasure(a)


def g_bottom() -> GiryMeasure:
    return _BOTTOM


def g_bind(x: GiryMeasure, k: Callable[[Any], GiryMeasure]) -> GiryMeasure:
    if isinstance(x, UnitMeasure):
        return k(x.value)
    if isinstance(x, BottomMeasure):
        return _BOTTOM
    return BindMeasure(x, k)


def g_map(x: GiryMeasure, fn: Callable[[Any], Any]) -> GiryMeasure:
    return g_bind(x, lambda a: UnitMeasure(fn(a)))


def g_strength(x: GiryMeasure, y: GiryMeasure) -> GiryMeasure:
    if isinstance(x, BottomMeasure) or isinstance(y, BottomMeasure):
        return _BOTTOM
    if isinstance(x, UnitMeasure) and isinstance(y, UnitMeasure):
        return UnitMeasure((x.value, y.value))
    return StrengthMeasure(x, y)


def g_costrength(x: GiryMeasure, y: GiryMeasure) -> GiryMeasure:
    if isinstance(x, BottomMeasure) or isinstance(y, BottomMeasure):
        return _BOTTOM
    if isinstance(x, UnitMeasure) and isinstance(y, UnitMeasure):
        return UnitMeasure((x.value, y.value))
    return CostrengthMeasure(x, y)


def g_from_weights(w, subprob: bool = True) -> GiryMeasure:
    """Point masses with rational weights; accepts a mapping, pairs, or a
    :class:`DiscreteValuation`."""
    if isinstance(w, DiscreteValuation):
        subprob = w.subprob
        w = w.weights
    items = list(w.items()) if isinstance(w, Mapping) else list(w)
    items = [(a, as_q(q)) for a, q in items]
    if any(q < 0 for _, q in items):
        raise ValueError("weights must be nonnegative")
    if subprob and sum((q for _, q in items), ZERO) > 1:
        raise ValueError("total weight exceeds 1")
    items = [(a, q) for a, q in items if q != 0]
    if not items:
        return _BOTTOM
    if len(items) == 1 and items[0][1] == ONE:
        return UnitMeasure(items[0][0])
    return DiscreteMeasure(items)


def g_bernoulli() -> GiryMeasure:
    return DiscreteMeasure([(True, Q(1, 2)), (False, Q(1, 2))])


def g_uniform01() -> GiryMeasure:
    return _UNIFORM


def g_mass(x: GiryMeasure) -> LowerRealNN:
    return x.integrate(ONE_OBS)


def g_kleene_lub(chain: Callable[[int], GiryMeasure], diagonal: bool = False) -> GiryMeasure:
    return KleeneLub(chain, diagonal)


def g_lt(s_true: Sier, s_false: Sier) -> GiryMeasure:
    return LtMeasure(s_true, s_false)


def point_observable(target) -> Observable:
    """Indicator of a single discrete outcome."""
    one, zero = lr_from_rat(1), LR_ZERO
    return Observable(lambda a: one if a == target and type(a) is type(target) else zero)


def table_observable(values: Mapping, default=0) -> Observable:
    """Observable on a discrete space given by a finite rational table."""
    table = {a: lr_from_rat(v) for a, v in values.items()}
    d = lr_from_rat(default)
    return Observable(lambda a: table.get(a, d))


def discrete_outcomes(x: GiryMeasure, atoms: Iterable, n: int) -> dict:
    """Lower bounds at fuel n on the probability of each listed atom."""
    return {a: x.integrate(point_observable(a)).approx(n) for a in atoms}
