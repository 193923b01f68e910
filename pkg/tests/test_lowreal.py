import pytest
from hypothesis import given, strategies as st

from rmlsem.lowreal import (
    LR_ONE, LR_ZERO, LowerReal, LowerRealNN, cumulative_max, lr_add, lr_countable_join,
    lr_from_rat, lr_join2, lr_lt_rat, lr_meet, lr_mul_nn, lr_scale, nonneg,
)
from rmlsem.rational import Q

from .strategies import nonneg_rationals, rationals

FUELS = range(33)


def seq(values):
    """Lower real whose approximants follow a finite list, then stay put."""
    return LowerReal(lambda n: values[min(n, len(values) - 1)])


one_minus = LowerRealNN(lambda n: 1 - Q(1, 2 ** n))


def test_embedding_examples():
    assert lr_from_rat(0).approx(5) == 0
    assert lr_from_rat(Q(3, 2)).approx(0) == Q(3, 2)
    assert lr_add(lr_from_rat(Q(1, 3)), lr_from_rat(Q(1, 6))).approx(4) == Q(1, 2)
    assert isinstance(lr_from_rat(1), LowerRealNN)
    assert not isinstance(lr_from_rat(-1), LowerRealNN)


def test_add_examples():
    s = lr_add(one_minus, LR_ONE)
    assert [s.approx(n) for n in range(4)] == [1, Q(3, 2), Q(7, 4), Q(15, 8)]
    x = seq([0, 1, 5])
    assert [lr_add(x, LR_ZERO).approx(n) for n in range(4)] == [0, 1, 5, 5]


def test_mul_scale_examples():
    y = one_minus
    assert all(lr_mul_nn(LR_ZERO, y).approx(n) == 0 for n in FUELS)
    assert all(lr_mul_nn(LR_ONE, y).approx(n) == y.approx(n) for n in FUELS)
    assert lr_mul_nn(lr_from_rat(Q(1, 2)), lr_from_rat(Q(1, 2))).approx(3) == Q(1, 4)
    assert lr_scale(0, y).approx(9) == 0
    assert lr_scale(1, y).approx(9) == y.approx(9)
    assert lr_scale(Q(1, 3), LR_ONE).approx(2) == Q(1, 3)
    with pytest.raises(ValueError):
        lr_scale(-1, y)
    with pytest.raises(TypeError):
        lr_mul_nn(lr_from_rat(-1), y)


def test_meet_join_examples():
    assert lr_meet(lr_from_rat(2), lr_from_rat(2)).approx(1) == 2
    assert lr_join2(LR_ZERO, LR_ONE).approx(4) == 1
    m = lr_meet(seq([0, 2, 2]), seq([1, 1, 3]))
    assert [m.approx(n) for n in range(3)] == [0, 1, 2]


def test_countable_join_examples():
    c = lr_countable_join(lambda i: lr_from_rat(Q(2, 3)))
    assert all(c.approx(n) == Q(2, 3) for n in range(5))
    d = lr_countable_join(lambda i: lr_from_rat(1 - Q(1, 2 ** i)))
    assert [d.approx(n) for n in range(4)] == [0, Q(1, 2), Q(3, 4), Q(7, 8)]
    e = lr_countable_join(lambda i: lr_from_rat(5) if i == 0 else LR_ZERO)
    assert all(e.approx(n) == 5 for n in range(5))


def test_lt_rat_examples():
    assert lr_lt_rat(0, LR_ONE).first_true(10) == 0
    assert lr_lt_rat(1, LR_ONE).first_true(64) is None
    assert lr_lt_rat(Q(3, 4), one_minus).first_true(10) == 3


def test_lt_rat_boundary_of_increasing_sequence():
    # 3/4 < 1 - 2^-n first holds at n = 3 (n = 2 gives equality)
    assert not lr_lt_rat(Q(3, 4), one_minus).approx(2)


def test_nonneg_clamps():
    x = seq([-3, -1, 2])
    assert [nonneg(x).approx(n) for n in range(3)] == [0, 0, 2]


def test_cumulative_max():
    vals = [Q(1, 2), Q(1, 4), Q(3, 4), Q(-1)]
    c = cumulative_max(lambda j: vals[j] if j < 4 else 0)
    assert [c.approx(n) for n in range(5)] == [Q(1, 2), Q(1, 2), Q(3, 4), Q(3, 4), Q(3, 4)]


monotone_seqs = st.lists(rationals(), min_size=1, max_size=8).map(
    lambda xs: seq(sorted(xs)))
nn_seqs = st.lists(nonneg_rationals, min_size=1, max_size=8).map(
    lambda xs: nonneg(seq(sorted(xs))))


@given(monotone_seqs, monotone_seqs, nn_seqs, nn_seqs)
def test_operations_preserve_monotonicity(x, y, a, b):
    for z in (lr_add(x, y), lr_meet(x, y), lr_join2(x, y), lr_mul_nn(a, b),
              lr_scale(Q(3, 7), a), lr_countable_join(lambda i: [x, y][i % 2])):
        vals = [z.approx(n) for n in FUELS]
        assert vals == sorted(vals)


@given(rationals(), rationals())
def test_embedding_is_homomorphism(q, r):
    x, y = lr_from_rat(q), lr_from_rat(r)
    assert lr_add(x, y).approx(0) == q + r
    assert lr_meet(x, y).approx(0) == min(q, r)
    assert lr_join2(x, y).approx(0) == max(q, r)
    if q >= 0 and r >= 0:
        assert lr_mul_nn(x, y).approx(0) == q * r


@given(monotone_seqs, monotone_seqs, monotone_seqs)
def test_add_commutative_associative(x, y, z):
    for n in FUELS:
        assert lr_add(x, y).approx(n) == lr_add(y, x).approx(n)
        assert lr_add(lr_add(x, y), z).approx(n) == lr_add(x, lr_add(y, z)).approx(n)


@given(monotone_seqs, st.lists(monotone_seqs, min_size=1, max_size=5))
def test_meet_distributes_over_join(x, fam):
    f = lambda i: fam[i % len(fam)]
    lhs = lr_meet(x, lr_countable_join(f))
    rhs = lr_countable_join(lambda i: lr_meet(x, f(i)))
    for n in FUELS:
        assert lhs.approx(n) == rhs.approx(n)


@given(monotone_seqs, rationals(), rationals())
def test_lt_rat_monotone_and_antitone(x, q, r):
    lo, hi = min(q, r), max(q, r)
    for n in FUELS:
        if lr_lt_rat(hi, x).approx(n):
            assert lr_lt_rat(lo, x).approx(n)
        if lr_lt_rat(lo, x).approx(n):
            assert lr_lt_rat(lo, x).approx(n + 1)
