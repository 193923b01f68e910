import pytest
from hypothesis import given, settings, strategies as st

from rmlsem.giry import (
    KleeneLub, g_bernoulli, g_bind, g_bottom, g_costrength, g_from_weights, g_kleene_lub,
    g_map, g_mass, g_strength, g_uniform01, g_unit, point_observable, table_observable,
)
from rmlsem.interval import RatInterval, real_lt, real_from_rat
from rmlsem.lowreal import LR_ONE, LR_ZERO, LowerRealNN
from rmlsem.measure import (
    DiscreteValuation, ONE_OBS, ZERO_OBS, Observable, identity_observable, indicator, open_from_ros,
)
from rmlsem.rational import ONE, Q, ZERO
from rmlsem.realopen import ros_interval

FUELS = (0, 1, 5, 32)


def equal_on(x, y, f, fuels=FUELS):
    return all(x.integrate(f).approx(n) == y.integrate(f).approx(n) for n in fuels)


def lt_indicator():
    def ev(ab):
        s1, _ = real_lt(ab[0], ab[1])
        return LowerRealNN(lambda n: ONE if s1.approx(n) else ZERO)
    return Observable(ev)


def test_unit_examples():
    assert g_unit("a").integrate(ONE_OBS).approx(0) == 1
    assert g_unit("a").integrate(ZERO_OBS).approx(3) == 0
    assert g_unit("heads").integrate(point_observable("heads")).approx(0) == 1
    assert g_mass(g_unit(7)).approx(0) == 1


def test_bottom_examples():
    assert g_mass(g_bottom()).approx(10) == 0
    assert g_bind(g_bottom(), lambda a: g_unit(a)) is g_bottom()
    lub = g_kleene_lub(lambda i: g_bottom())
    assert g_mass(lub).approx(8) == 0


def test_from_weights_examples():
    coin = g_from_weights({0: Q(1, 2), 1: Q(1, 2)})
    assert g_mass(coin).approx(0) == 1
    assert equal_on(g_from_weights({"a": 1}), g_unit("a"), point_observable("a"))
    assert g_mass(g_from_weights({0: Q(1, 3)})).approx(0) == Q(1, 3)
    assert g_mass(g_from_weights(DiscreteValuation({0: Q(1, 5)}))).approx(0) == Q(1, 5)
    with pytest.raises(ValueError):
        g_from_weights({0: Q(2, 3), 1: Q(1, 2)})


def test_bind_coin_pairs():
    coin = g_bernoulli()
    both = g_bind(coin, lambda a: g_bind(coin, lambda b: g_unit(a and b)))
    assert both.integrate(point_observable(True)).approx(0) == Q(1, 4)


def test_strength_examples():
    assert g_strength(g_bottom(), g_uniform01()) is g_bottom()
    assert g_strength(g_unit(1), g_bottom()) is g_bottom()
    pair = g_strength(g_unit(1), g_unit(2))
    assert equal_on(pair, g_unit((1, 2)), point_observable((1, 2)))


def test_uniform_examples():
    u = g_uniform01()
    m = g_mass(u)
    assert all(m.approx(j) >= 1 - Q(2, 2 ** j) for j in range(12))
    half = u.integrate(indicator(open_from_ros(ros_interval(-1, Q(1, 2)))))
    # boxes [i/2^j, (i+1)/2^j] with (i+1)/2^j < 1/2 certify
    assert [half.approx(j) for j in range(1, 8)] == [Q(1, 2) - Q(1, 2 ** j) for j in range(1, 8)]
    mean = u.integrate(identity_observable())
    for j in range(8):
        d = 2 ** j
        assert mean.approx(j) == Q(d * (d - 1), 2 * d * d)


def test_uniform_square_triangle():
    u = g_uniform01()
    f = lt_indicator()
    fwd = g_strength(u, u).integrate(f)
    bwd = g_costrength(u, u).integrate(f)
    for k in range(7):
        a, b = fwd.approx(k), bwd.approx(k)
        assert a <= Q(1, 2) and b <= Q(1, 2)
        assert abs(a - b) <= Q(8, 2 ** k)
    assert fwd.approx(6) >= Q(1, 2) - Q(8, 2 ** 6)


def test_kleene_examples():
    coin = g_bernoulli()
    const = g_kleene_lub(lambda i: coin)
    assert equal_on(const, coin, point_observable(True))
    grow = g_kleene_lub(lambda i: g_from_weights({0: 1 - Q(1, 2 ** i)}))
    assert [g_mass(grow).approx(n) for n in range(4)] == [0, Q(1, 2), Q(3, 4), Q(7, 8)]
    dominated = g_kleene_lub(lambda i: g_bottom() if i == 0 else g_unit(0))
    assert g_mass(dominated).approx(1) == 1
    diag = g_kleene_lub(lambda i: g_from_weights({0: 1 - Q(1, 2 ** i)}), diagonal=True)
    assert [g_mass(diag).approx(n) for n in range(4)] == [0, Q(1, 2), Q(3, 4), Q(7, 8)]


# -- monad laws on random discrete data -------------------------------------

ATOMS = range(4)
weights = st.lists(st.integers(0, 10), min_size=4, max_size=4).map(
    lambda ws: {a: Q(w, max(sum(ws), 10)) for a, w in zip(ATOMS, ws)})
kernels = st.lists(weights, min_size=4, max_size=4)
tables = st.lists(st.integers(0, 8), min_size=4, max_size=4).map(
    lambda vs: table_observable({a: Q(v, 8) for a, v in zip(ATOMS, vs)}))


@given(st.sampled_from(list(ATOMS)), kernels, tables)
def test_left_unit(a, ks, f):
    k = lambda x: g_from_weights(ks[x])
    assert equal_on(g_bind(g_unit(a), k), k(a), f)
    # same law without the constructor shortcut
    from rmlsem.giry import BindMeasure
    assert equal_on(BindMeasure(g_unit(a), k), k(a), f)


@given(weights, tables)
def test_right_unit(w, f):
    x = g_from_weights(w)
    assert equal_on(g_bind(x, g_unit), x, f)


@given(weights, kernels, kernels, tables)
def test_associativity(w, ks, ls, f):
    x = g_from_weights(w)
    k = lambda a: g_from_weights(ks[a])
    l = lambda b: g_from_weights(ls[b])
    lhs = g_bind(g_bind(x, k), l)
    rhs = g_bind(x, lambda a: g_bind(k(a), l))
    assert equal_on(lhs, rhs, f)


@given(weights, kernels, weights)
def test_subprobability_closure(w, ks, w2):
    x = g_from_weights(w)
    composite = g_strength(g_bind(x, lambda a: g_from_weights(ks[a])), g_from_weights(w2))
    m = g_mass(composite)
    assert all(m.approx(n) <= 1 for n in FUELS)
    assert g_mass(g_map(x, lambda a: a + 1)).approx(0) == g_mass(x).approx(0)


@given(weights)
def test_strength_vanishes_with_bottom(w):
    x = g_from_weights(w)
    for m in (g_strength(x, g_bottom()), g_strength(g_bottom(), x)):
        assert all(m.integrate(ONE_OBS).approx(n) == 0 for n in FUELS)
