"""Valuations, lower integrals and the Riesz extension.

Observables are maps into nonnegative lower reals. Over the reals they also
need an interval lower bound ``ext(box, n)``: a rational that is below the
observable at every point of ``box``. Unless one is supplied explicitly, it is
obtained by evaluating the observable on the box-constant real, which is sound
for anything built from the interval operations in :mod:`rmlsem.interval`.
Opens over the reals carry the analogous certifier ``cert(box, n)``.

The Lebesgue valuation exhausts an open set by certified dyadic intervals; the
Riesz extension integrates with the level-set staircase sums on the grid
``m = 2**j, n = j``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Any, Callable, Iterable, Mapping, Optional

from .interval import RatInterval, RealNum, real_box
from .lowreal import (
    LR_ONE,
    LR_ZERO,
    LowerReal,
    LowerRealNN,
    cumulative_max,
    lr_from_rat,
    lr_lt_rat,
    lr_mul_nn,
    nonneg,
)
from .rational import ONE, Q, ZERO, as_q, ceil_q, floor_q
from .realopen import RatOpenSet, lambda_raw, ros_normalize
from .sier import Sier, meet, join2, sier_bot, sier_top


class Observable:
    """A map ``A -> R_l+``, optionally with an interval lower bound over boxes.

    ``support`` (a RatInterval, or None for unknown) bounds where the
    observable can be nonzero; only scans over the reals use it.
    """

    __slots__ = ("eval", "_ext", "support")

    def __init__(self, eval: Callable[[Any], LowerReal],
                 ext: Optional[Callable[[RatInterval, int], Any]] = None,
                 support: Optional[RatInterval] = None):
        self.eval = eval
        self._ext = ext
        self.support = support

    def ext(self, box: RatInterval, n: int):
        if self._ext is not None:
            return as_q(self._ext(box, n))
        return self.eval(real_box(box)).approx(n)

    def ext_real(self, box_real: RealNum, n: int):
        """Same as :meth:`ext`, for callers that already hold the box real."""
        if self._ext is not None:
            return as_q(self._ext(box_real.box, n))
        return self.eval(box_real).approx(n)


def const_observable(q) -> Observable:
    c = lr_from_rat(q)
    qq = as_q(q)
    return Observable(lambda _x: c, lambda _b, _n: qq)


ONE_OBS = const_observable(1)
ZERO_OBS = Observable(lambda _x: LR_ZERO, lambda _b, _n: ZERO, RatInterval(ZERO, ZERO))


def identity_observable() -> Observable:
    """f(x) = max(x, 0) for a real x, read from the lower enclosure endpoint."""

    def ev(x: RealNum) -> LowerRealNN:
        def fn(n):
            iv = x.approx(n)
            return iv.lo if iv.defined and iv.lo > 0 else ZERO
        return LowerRealNN(fn)

    return Observable(ev, lambda box, _n: max(box.lo, ZERO))


class OpenSet:
    """An open subset given by a semi-decidable membership predicate."""

    __slots__ = ("member", "_cert", "support")

    def __init__(self, member: Callable[[Any], Sier],
                 cert: Optional[Callable[[RatInterval, int], bool]] = None,
                 support: Optional[RatInterval] = None):
        self.member = member
        self._cert = cert
        self.support = support

    def cert(self, box: RatInterval, n: int) -> bool:
        if self._cert is not None:
            return bool(self._cert(box, n))
        return self.member(real_box(box)).approx(n)


def full_open() -> OpenSet:
    return OpenSet(lambda _x: sier_top(), lambda _b, _n: True)


def empty_open() -> OpenSet:
    return OpenSet(lambda _x: sier_bot(), lambda _b, _n: False, RatInterval(ZERO, ZERO))


def _inside(ros: RatOpenSet, lo, hi) -> bool:
    for a, b in ros.components:
        if a < lo and hi < b:
            return True
    return False


def open_from_ros(ros: RatOpenSet) -> OpenSet:
    """A rational open set as an open subset of the reals."""
    hull = ros.hull()
    support = RatInterval(hull[0], hull[1]) if hull else RatInterval(ZERO, ZERO)

    def member(x: RealNum) -> Sier:
        def fn(n):
            iv = x.approx(n)
            return iv.defined and _inside(ros, iv.lo, iv.hi)
        return Sier(fn)

    return OpenSet(member, lambda box, _n: _inside(ros, box.lo, box.hi), support)


def open_from_atoms(atoms: Iterable) -> OpenSet:
    """A subset of a discrete space (every subset is open there)."""
    s = frozenset(atoms)
    return OpenSet(lambda a: sier_top() if a in s else sier_bot())


def _support_meet(a, b):
    if a is None:
        return b
    if b is None:
        return a
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        return RatInterval(ZERO, ZERO)
    return RatInterval(lo, hi)


def _support_join(a, b):
    if a is None or b is None:
        return None
    return RatInterval(min(a.lo, b.lo), max(a.hi, b.hi))


def open_meet(u: OpenSet, v: OpenSet) -> OpenSet:
    return OpenSet(lambda x: meet(u.member(x), v.member(x)),
                   lambda box, n: u.cert(box, n) and v.cert(box, n),
                   _support_meet(u.support, v.support))


def open_join(u: OpenSet, v: OpenSet) -> OpenSet:
    # a box straddling both parts is not certified here; finer boxes are
    return OpenSet(lambda x: join2(u.member(x), v.member(x)),
                   lambda box, n: u.cert(box, n) or v.cert(box, n),
                   _support_join(u.support, v.support))


def open_product(u: OpenSet, v: OpenSet) -> OpenSet:
    """U x V as an open of pairs."""
    return OpenSet(lambda ab: meet(u.member(ab[0]), v.member(ab[1])))


def indicator(u: OpenSet) -> Observable:
    def ev(x) -> LowerRealNN:
        s = u.member(x)
        return LowerRealNN(lambda n: ONE if s.approx(n) else ZERO)

    return Observable(ev, lambda box, n: ONE if u.cert(box, n) else ZERO, u.support)


def level_set(f: Observable, q) -> OpenSet:
    """The open ``[f > q]``."""
    q = as_q(q)
    return OpenSet(lambda x: lr_lt_rat(q, f.eval(x)),
                   lambda box, n: f.ext(box, n) > q,
                   f.support)


def _staircase_count(v, j: int) -> int:
    """#{i in 1..j*2**j : i/2**j < v}."""
    if v <= 0:
        return 0
    return min(max(ceil_q(v * (1 << j)) - 1, 0), j << j)


# -- valuations ----------------------------------------------------------------

class DiscreteValuation:
    """Finite-support valuation given by nonnegative rational weights."""

    def __init__(self, weights: Mapping, subprob: bool = True):
        self.weights = {a: as_q(w) for a, w in weights.items()}
        if any(w < 0 for w in self.weights.values()):
            raise ValueError("weights must be nonnegative")
        if subprob and sum(self.weights.values(), ZERO) > 1:
            raise ValueError("total weight exceeds 1")
        self.subprob = subprob

    def measure_of(self, u: OpenSet) -> LowerRealNN:
        items = [(u.member(a), w) for a, w in self.weights.items()]
        return LowerRealNN(lambda n: sum((w for s, w in items if s.approx(n)), ZERO))

    def weight(self, atoms: Iterable):
        return sum((self.weights.get(a, ZERO) for a in set(atoms)), ZERO)

    def staircase(self, f: Observable, j: int):
        total = ZERO
        for a, w in self.weights.items():
            total += w * _staircase_count(f.eval(a).approx(j), j)
        return total / (1 << j)


class LebesgueValuation:
    """Lebesgue valuation on the reals, optionally restricted to ``(a, b)``.

    ``measure_of(U).approx(n)`` is the length of the union of all dyadic
    intervals ``(i/2**k, (i+1)/2**k)`` inside ``(-2**k, 2**k)``, ``k <= n``,
    whose closures U certifies at fuel k. A certified interval's subintervals
    are already covered, so they are not revisited.
    """

    def __init__(self, window: Optional[tuple] = None):
        if window is not None:
            a, b = as_q(window[0]), as_q(window[1])
            if not a < b:
                raise ValueError("window must satisfy a < b")
            window = (a, b)
        self.window = window

    def restrict(self, a, b) -> "LebesgueValuation":
        a, b = as_q(a), as_q(b)
        if self.window is not None:
            a, b = max(a, self.window[0]), min(b, self.window[1])
        return LebesgueValuation((a, b))

    def _region(self, support: Optional[RatInterval]):
        region = support
        if self.window is not None:
            region = _support_meet(region, RatInterval(*self.window))
        return region

    def _certifier(self, u: OpenSet):
        if self.window is None:
            return u.cert
        a, b = self.window
        return lambda box, n: a < box.lo and box.hi < b and u.cert(box, n)

    def cover(self, u: OpenSet, n: int) -> RatOpenSet:
        """The certified dyadic union at fuel n, as a rational open set."""
        certify = self._certifier(u)
        region = self._region(u.support)
        found = []
        frontier: list[int] = []
        for k in range(n + 1):
            d = 1 << k
            cands = [c for i in frontier for c in (2 * i, 2 * i + 1)]
            cands.extend(_new_indices(k, region))
            frontier = []
            for i in cands:
                lo, hi = Q(i, d), Q(i + 1, d)
                if region is not None:
                    if not (lo < region.hi and hi > region.lo):
                        continue
                    if not (region.lo <= lo and hi <= region.hi):
                        frontier.append(i)
                        continue
                if certify(RatInterval(lo, hi), k):
                    found.append((lo, hi))
                else:
                    frontier.append(i)
        return ros_normalize(found)

    def measure_of(self, u: OpenSet) -> LowerRealNN:
        return LowerRealNN(lambda n: lambda_raw(self.cover(u, n)))

    def staircase(self, f: Observable, j: int):
        """The staircase sum s_{f, 2**j, j} with every level set read at fuel j.

        Computed in one pass: a finest box lies in the cover of ``[f > q]``
        iff some scanned ancestor-or-self box has ``ext > q``, so only the
        running maximum of ``ext`` down the dyadic tree is needed.
        """
        region = self._region(f.support)
        if self.window is None:
            ext = f.ext
        else:
            a, b = self.window

            def ext(box, n):
                if a < box.lo and box.hi < b:
                    return f.ext(box, n)
                return None

        best: dict[int, Any] = {}
        for k in range(j + 1):
            d = 1 << k
            lo_i, hi_i = _index_range(k, region)
            cur: dict[int, Any] = {}
            for i in range(lo_i, hi_i + 1):
                lo, hi = Q(i, d), Q(i + 1, d)
                m = best.get(i >> 1) if k else None
                if region is None or (region.lo <= lo and hi <= region.hi):
                    v = ext(RatInterval(lo, hi), k)
                    if v is not None and (m is None or v > m):
                        m = v
                if m is not None:
                    cur[i] = m
            best = cur
        total = sum(_staircase_count(m, j) for m in best.values())
        return Q(total, 1 << (2 * j))


def _index_range(k: int, region: Optional[RatInterval]) -> tuple[int, int]:
    d = 1 << k
    lo_i, hi_i = -(d * d), d * d - 1
    if region is not None:
        lo_i = max(lo_i, floor_q(region.lo * d))
        hi_i = min(hi_i, ceil_q(region.hi * d) - 1)
    return lo_i, hi_i


def _new_indices(k: int, region: Optional[RatInterval]) -> list[int]:
    """Level-k indices whose interval lies in (-2**k, 2**k) but not in the
    previous level's range."""
    d = 1 << k
    full_lo, full_hi = -(d * d), d * d - 1
    if k == 0:
        rings = [(full_lo, full_hi)]
    else:
        half = (d * d) // 2
        rings = [(full_lo, -half - 1), (half, full_hi)]
    lo_i, hi_i = _index_range(k, region)
    out = []
    for a, b in rings:
        a, b = max(a, lo_i), min(b, hi_i)
        out.extend(range(a, b + 1))
    return out


def lebesgue_valuation() -> LebesgueValuation:
    return LebesgueValuation()


# -- lower integrals -----------------------------------------------------------

def staircase_generic(mu, f: Observable, j: int):
    """s_{f, 2**j, j} straight from the definition: one valuation query per level."""
    step = Q(1, 1 << j)
    total = ZERO
    for i in range(1, (j << j) + 1):
        total += mu.measure_of(level_set(f, i * step)).approx(j)
    return total * step


def riesz_extend(mu, f: Observable, generic: bool = False) -> LowerRealNN:
    """Lower integral of f against the valuation mu.

    ``approx(k)`` is the running maximum over ``j <= k`` of the staircase sums
    ``s_{f, 2**j, j}``. Valuations with a ``staircase`` method compute it in
    one pass; ``generic=True`` forces the level-by-level definition.
    """
    if not generic and hasattr(mu, "staircase"):
        return cumulative_max(lambda j: mu.staircase(f, j))
    return cumulative_max(lambda j: staircase_generic(mu, f, j))


def _integrate(I, f: Observable) -> LowerRealNN:
    if hasattr(I, "integrate"):
        return I.integrate(f)
    return I(f)


def integral_restrict(I, u: OpenSet) -> LowerRealNN:
    """The valuation induced by a lower integral: U -> I(1_U)."""
    return _integrate(I, indicator(u))


def product_fwd(I, J, f: Observable) -> LowerRealNN:
    """I(a -> J(b -> f(a, b)))."""
    return _integrate(I, Observable(lambda a: _integrate(J, Observable(lambda b: f.eval((a, b))))))


def product_bwd(I, J, f: Observable) -> LowerRealNN:
    """J(b -> I(a -> f(a, b)))."""
    return _integrate(J, Observable(lambda b: _integrate(I, Observable(lambda a: f.eval((a, b))))))


def product_indicator_check(u: OpenSet, v: OpenSet, samples: Iterable[tuple], fuels: Iterable[int] = range(17)) -> bool:
    """Pointwise check of 1_{UxV}(a, b) = 1_U(a) * 1_V(b) at the given fuels."""
    fuels = list(fuels)
    lhs_obs = indicator(open_product(u, v))
    iu, iv = indicator(u), indicator(v)
    for a, b in samples:
        lhs = lhs_obs.eval((a, b))
        rhs = lr_mul_nn(nonneg(iu.eval(a)), nonneg(iv.eval(b)))
        if any(lhs.approx(n) != rhs.approx(n) for n in fuels):
            return False
    return True


def modular_defect(mu, u: OpenSet, v: OpenSet, n: int):
    """mu(U) + mu(V) - mu(U or V) - mu(U and V), read at fuel n."""
    return (mu.measure_of(u).approx(n) + mu.measure_of(v).approx(n)
            - mu.measure_of(open_join(u, v)).approx(n) - mu.measure_of(open_meet(u, v)).approx(n))


def subsets(atoms) -> Iterable[tuple]:
    atoms = list(atoms)
    for k in range(len(atoms) + 1):
        yield from combinations(atoms, k)
