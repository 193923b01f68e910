from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from rmlsem.interval import (
    RatInterval, RealNum, fallback, i_div, i_mul, interval_extend, real_add, real_box,
    real_div, real_exp, real_from_rat, real_log, real_lt, real_mul, real_neg, real_sin,
    real_sqrt, real_sub,
)
from rmlsem.rational import Q
from rmlsem.sier import meet

from .strategies import rationals

FUELS = range(0, 33)
mpmath.mp.prec = 300


def iv(a, b):
    return RatInterval(Q(a), Q(b))


def mp(q):
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


def contains(box, value):
    return mp(box.lo) <= value <= mp(box.hi)


def test_interval_validation():
    with pytest.raises(ValueError):
        RatInterval(Q(2), Q(1))
    assert fallback(3) == RatInterval(Q(-8), Q(8), defined=False)


def test_literal_arithmetic():
    assert real_from_rat(2).approx(9) == iv(2, 2)
    assert real_add(real_from_rat(1), real_from_rat(1)).approx(4) == iv(2, 2)
    assert real_mul(real_from_rat(3), real_from_rat(Q(1, 3))).approx(4) == iv(1, 1)
    assert real_add(real_box(iv(1, 2)), real_box(iv(3, 4))).approx(0) == iv(4, 6)
    assert real_mul(real_box(iv(-1, 1)), real_box(iv(-1, 1))).approx(0) == iv(-1, 1)
    assert real_div(real_from_rat(1), real_from_rat(2)).approx(0) == iv(Q(1, 2), Q(1, 2))
    assert real_sub(real_from_rat(1), real_from_rat(3)).approx(0) == iv(-2, -2)
    assert real_neg(real_box(iv(1, 2))).approx(0) == iv(-2, -1)


def test_division_by_interval_containing_zero_is_undefined():
    r = i_div(iv(1, 1), iv(-1, 1), 5)
    assert not r.defined and r == fallback(5)


def test_interval_extend_examples():
    box = iv(0, 1)
    assert interval_extend(lambda x: x, box, 3) == iv(0, 1)
    assert interval_extend(lambda x: real_mul(x, x), box, 3) == iv(0, 1)
    assert interval_extend(lambda x: real_add(x, x), box, 3) == iv(0, 2)


def test_elementary_at_special_points():
    for n in FUELS:
        e = real_exp(real_from_rat(0)).approx(n)
        assert e.contains(1) and e.width <= Q(1, 2 ** n) * 2
        s = real_sin(real_from_rat(0)).approx(n)
        assert s.contains(0) and s.width <= Q(1, 2 ** n)
        assert real_log(real_from_rat(1)).approx(n).contains(0)


def _exp1_oracle(terms=40):
    # e = sum 1/k!; tail after `terms` terms is below 2/terms!
    s, f = Fraction(0), Fraction(1)
    for k in range(terms):
        s += f
        f /= k + 1
    return s, s + 2 * f


def test_exp_one_against_series_oracle():
    lo, hi = _exp1_oracle()
    x = real_exp(real_from_rat(1))
    for n in FUELS:
        box = x.approx(n)
        assert Fraction(int(box.lo.numerator), int(box.lo.denominator)) <= hi
        assert Fraction(int(box.hi.numerator), int(box.hi.denominator)) >= lo


ELEMENTARY = [
    (real_exp, mpmath.exp, lambda q: q < 40),
    (real_log, mpmath.log, lambda q: q > 0),
    (real_sqrt, mpmath.sqrt, lambda q: q >= 0),
    (real_sin, mpmath.sin, lambda q: True),
]


@pytest.mark.parametrize("fn,ref,domain", ELEMENTARY, ids=["exp", "log", "sqrt", "sin"])
@given(q=rationals(max_den=1000, lo=-30, hi=30))
def test_elementary_sound_nested_and_tight(fn, ref, domain, q):
    if not domain(q):
        return
    x = fn(real_from_rat(q))
    truth = ref(mp(q))
    prev = None
    for n in (0, 1, 4, 9, 16, 24, 32):
        box = x.approx(n)
        assert box.defined and contains(box, truth)
        if prev is not None:
            assert box.subset_of(prev)
        prev = box
    assert mp(prev.width) <= mpmath.mpf(2) ** -32 * (abs(truth) + 1)


@pytest.mark.parametrize("fn,ref", [(real_exp, mpmath.exp), (real_sin, mpmath.sin), (real_sqrt, mpmath.sqrt)])
@given(a=rationals(max_den=64, lo=0, hi=4), w=st.integers(1, 64))
def test_elementary_on_boxes_encloses_the_range(fn, ref, a, w):
    b = a + Q(w, 64)
    box = fn(real_box(RatInterval(a, b))).approx(10)
    for t in range(5):
        x = mp(a) + (mp(b) - mp(a)) * t / 4
        assert contains(box, ref(x))


def test_partial_functions_fall_back():
    assert not real_log(real_from_rat(0)).approx(3).defined
    assert not real_sqrt(real_from_rat(-1)).approx(3).defined
    assert not real_log(real_box(iv(-1, 1))).approx(3).defined


def test_comparison_examples():
    s1, s2 = real_lt(real_from_rat(1), real_from_rat(2))
    assert s1.first_true(10) == 0 and s2.first_true(64) is None
    x = real_from_rat(Q(1, 3))
    s1, s2 = real_lt(x, x)
    assert s1.first_true(64) is None and s2.first_true(64) is None


def test_comparison_fires_once_enclosures_separate():
    eighth = real_from_rat(Q(1, 8))
    # total width 2^-n centred on 0: separated once 2^-(n+1) < 1/8
    centred = RealNum(lambda n: RatInterval(-Q(1, 2 ** (n + 1)), Q(1, 2 ** (n + 1))))
    assert real_lt(centred, eighth)[0].first_true(20) == 3
    # half-width 2^-n: separated once 2^-n < 1/8
    wide = RealNum(lambda n: RatInterval(-Q(1, 2 ** n), Q(1, 2 ** n)))
    assert real_lt(wide, eighth)[0].first_true(20) == 4


def _shrinking(q, k):
    """Nested enclosures of q with an offset so they are never points."""
    return RealNum(lambda n: RatInterval(q - Q(k, 2 ** n), q + Q(1, 2 ** n)))


@given(rationals(), rationals(), st.integers(1, 5))
def test_comparison_disjoint_and_nested_arithmetic(q, r, k):
    x, y = _shrinking(q, k), _shrinking(r, k)
    s1, s2 = real_lt(x, y)
    for n in FUELS:
        assert not meet(s1, s2).approx(n)
    if q < r:
        assert s1.first_true(64) is not None
    for z, exact in ((real_add(x, y), q + r), (real_sub(x, y), q - r), (real_mul(x, y), q * r)):
        prev = None
        for n in FUELS:
            box = z.approx(n)
            assert box.contains(exact)
            if prev is not None:
                assert box.subset_of(prev) and box.width <= prev.width
            prev = box


@given(rationals(), rationals())
def test_multiplication_matches_endpoint_products(a, b):
    lo, hi = min(a, b), max(a, b)
    x = RatInterval(lo, hi)
    y = RatInterval(lo - 1, hi + 2)
    r = i_mul(x, y)
    prods = [p * s for p in (x.lo, x.hi) for s in (y.lo, y.hi)]
    assert r == RatInterval(min(prods), max(prods))
