from hypothesis import given, strategies as st

from rmlsem.sier import (
    Sier, countable_join, guard, join2, meet, sier_after, sier_bot, sier_from_bool, sier_top,
)

from .strategies import fire_times

FUELS = range(65)


def first(s, budget=64):
    return s.first_true(budget)


def test_constants():
    assert sier_top().approx(0) and sier_top().approx(7)
    assert not sier_bot().approx(0)
    assert sier_from_bool(True).approx(3) is True
    assert sier_from_bool(False).approx(3) is False
    assert first(sier_from_bool(True)) == 0
    assert first(sier_from_bool(False)) is None


def test_negative_fuel_rejected():
    import pytest
    with pytest.raises(ValueError):
        Sier(lambda n: True).approx(-1)
    with pytest.raises(ValueError):
        sier_top().approx(-1)


def test_meet_and_join_examples():
    s, t = sier_after(2), sier_after(5)
    assert first(meet(s, t)) == 5
    assert first(join2(sier_after(4), sier_after(1))) == 1
    assert not meet(sier_bot(), sier_top()).approx(9)
    assert not join2(sier_bot(), sier_bot()).approx(9)
    assert join2(sier_top(), sier_after(None)).approx(0)


@given(fire_times)
def test_units(k):
    s = sier_after(k)
    for n in FUELS:
        assert meet(sier_top(), s).approx(n) == s.approx(n)
        assert join2(sier_bot(), s).approx(n) == s.approx(n)
        assert not meet(s, sier_bot()).approx(n)


def test_countable_join_dovetail():
    assert first(countable_join(lambda i: sier_bot())) is None
    assert countable_join(lambda i: sier_top() if i == 0 else sier_bot()).approx(0)
    only3 = countable_join(lambda i: sier_top() if i == 3 else sier_bot())
    assert not only3.approx(2) and only3.approx(3)


@given(st.lists(fire_times, min_size=1, max_size=8))
def test_countable_join_matches_or(times):
    j = countable_join(lambda i: sier_after(times[i]) if i < len(times) else sier_bot())
    expected = any(t is not None for t in times)
    assert (first(j, 64) is not None) == expected


def test_guard_examples():
    calls = []
    g = guard(sier_bot(), lambda: calls.append(1) or sier_top())
    assert first(g) is None and not calls
    assert first(guard(sier_top(), sier_top)) == 0
    assert first(guard(sier_after(2), lambda: sier_after(4))) == 4


def test_guard_continuation_runs_after_fire_only():
    calls = []
    g = guard(sier_after(3), lambda: calls.append(1) or sier_top())
    assert not g.approx(2) and not calls
    assert g.approx(3) and calls == [1]
    g.approx(10)
    assert calls == [1]


@given(fire_times, fire_times, fire_times)
def test_monotone_and_lattice_laws(a, b, c):
    s, t, u = sier_after(a), sier_after(b), sier_after(c)
    built = [meet(s, t), join2(s, t), guard(s, lambda: t),
             countable_join(lambda i: [s, t, u][i] if i < 3 else sier_bot())]
    for x in built:
        vals = [x.approx(n) for n in FUELS]
        assert all(not v or w for v, w in zip(vals, vals[1:]))
    for n in FUELS:
        assert meet(s, t).approx(n) == meet(t, s).approx(n)
        assert join2(s, t).approx(n) == join2(t, s).approx(n)
        assert meet(meet(s, t), u).approx(n) == meet(s, meet(t, u)).approx(n)
        assert join2(join2(s, t), u).approx(n) == join2(s, join2(t, u)).approx(n)
        assert meet(s, s).approx(n) == s.approx(n) == join2(s, s).approx(n)


@given(fire_times, st.lists(fire_times, max_size=6))
def test_meet_distributes_over_countable_join(a, times):
    s = sier_after(a)
    fam = lambda i: sier_after(times[i]) if i < len(times) else sier_bot()
    lhs = meet(s, countable_join(fam))
    rhs = countable_join(lambda i: meet(s, fam(i)))
    assert (first(lhs) is not None) == (first(rhs) is not None)


@given(fire_times, fire_times)
def test_guard_is_conjunction_eventually(a, b):
    g = guard(sier_after(a), lambda: sier_after(b))
    assert (first(g) is not None) == (a is not None and b is not None)
