"""Denotational evaluator: core Rml terms to sub-probability measures.

Values are plain Python data: N as int, B as bool, R as RealNum, the unit as
``()``, pairs as tuples and functions as :class:`Closure`. Effects sequence
left to right through ``g_bind``; pairs use the strength. A ``rec`` is
unrolled ``rec_fuel`` times over the everywhere-bottom function, and a whole
program denotes the join of those iterates.
"""

from __future__ import annotations

from collections import OrderedDict
from functools import lru_cache
from typing import Any, Callable, Mapping, Optional

from ..giry import (
    BottomMeasure,
    GiryMeasure,
    MemoMeasure,
    UnitMeasure,
    g_bernoulli,
    g_bind,
    g_bottom,
    g_kleene_lub,
    g_lt,
    g_strength,
    g_uniform01,
    g_unit,
)
from ..interval import (
    RealNum,
    real_add,
    real_div,
    real_exp,
    real_from_rat,
    real_log,
    real_lt,
    real_mul,
    real_neg,
    real_sin,
    real_sqrt,
    real_sub,
)
from .syntax import (
    App, Bernoulli, BinOp, BoolLit, If, Lam, NatLit, Pair, Prim, RealLit, Rec, Term,
    Uniform, UnitLit, Var, is_core,
)


class Closure:
    """A function value ``Val -> GiryMeasure``, memoized per argument.

    Arguments are keyed by Python hashing. Reals hash by identity, which is
    sound (the same object always denotes the same real) and lets the dyadic
    boxes shared by every uniform draw hit the cache.
    """

    __slots__ = ("fn", "_cache", "_size")

    def __init__(self, fn: Callable[[Any], GiryMeasure], size: int = 512):
        self.fn = fn
        self._cache: OrderedDict = OrderedDict()
        self._size = size

    def __call__(self, v) -> GiryMeasure:
        try:
            key = (type(v), v)
            hit = self._cache.get(key)
        except TypeError:
            return self.fn(v)
        if hit is not None:
            self._cache.move_to_end(key)
            return hit
        m = self.fn(v)
        if not isinstance(m, (MemoMeasure, UnitMeasure, BottomMeasure)):
            m = MemoMeasure(m)
        self._cache[key] = m
        if len(self._cache) > self._size:
            self._cache.popitem(last=False)
        return m

    def __repr__(self):
        return "<closure>"


def _prim(op: str, a):
    if op == "succ":
        return a + 1
    if op == "pred":
        return a - 1 if a > 0 else 0
    if op == "zero":
        return a == 0
    if op == "nat_to_real":
        return real_from_rat(a)
    if op == "fst":
        return a[0]
    if op == "snd":
        return a[1]
    return _REAL_PRIMS[op](a)


@lru_cache(maxsize=1024)
def _real_literal(q) -> RealNum:
    return real_from_rat(q)


_REAL_PRIMS = {"exp": real_exp, "log": real_log, "sin": real_sin, "sqrt": real_sqrt, "neg": real_neg}
_REAL_BINOPS = {"+": real_add, "-": real_sub, "*": real_mul, "/": real_div}


def denote(t: Term, env: Optional[Mapping[str, Any]] = None, rec_fuel: int = 8) -> GiryMeasure:
    """The measure denoted by core term t under env, with recursion unrolled
    at most rec_fuel times."""
    if rec_fuel < 0:
        raise ValueError("rec_fuel must be >= 0")
    return _denote(t, dict(env or {}), rec_fuel)


def _denote(t: Term, env: dict, k: int) -> GiryMeasure:
    if isinstance(t, NatLit):
        return g_unit(int(t.value))
    if isinstance(t, RealLit):
        return g_unit(_real_literal(t.value))
    if isinstance(t, BoolLit):
        return g_unit(bool(t.value))
    if isinstance(t, UnitLit):
        return g_unit(())
    if isinstance(t, Var):
        try:
            return g_unit(env[t.name])
        except KeyError:
            raise NameError(f"unbound variable {t.name}") from None
    if isinstance(t, Bernoulli):
        return g_bernoulli()
    if isinstance(t, Uniform):
        return g_uniform01()
    if isinstance(t, Prim):
        op = t.op
        return g_bind(_denote(t.arg, env, k), lambda a: g_unit(_prim(op, a)))
    if isinstance(t, BinOp):
        x = _denote(t.left, env, k)
        y = _denote(t.right, env, k)
        if t.op == "<":
            return g_bind(x, lambda a: g_bind(y, lambda b: denote_lt(a, b)))
        fn = _REAL_BINOPS[t.op]
        return g_bind(x, lambda a: g_bind(y, lambda b: g_unit(fn(a, b))))
    if isinstance(t, If):
        branches: dict[bool, GiryMeasure] = {}

        def branch(c):
            m = branches.get(c)
            if m is None:
                m = branches[c] = _denote(t.then if c else t.else_, env, k)
            return m
        return g_bind(_denote(t.cond, env, k), branch)
    if isinstance(t, Pair):
        return g_strength(_denote(t.first, env, k), _denote(t.second, env, k))
    if isinstance(t, Lam):
        param, body = t.param, t.body
        return g_unit(Closure(lambda v: _denote(body, {**env, param: v}, k)))
    if isinstance(t, App):
        fm = _denote(t.fn, env, k)
        am = _denote(t.arg, env, k)
        return g_bind(fm, lambda f: g_bind(am, f))
    if isinstance(t, Rec):
        return g_unit(denote_rec(t.fname, t.param, t.body, env, k))
    raise TypeError(f"not a core term: {type(t).__name__}; run check_program first")


def denote_lt(x: RealNum, y: RealNum) -> GiryMeasure:
    """Measure on booleans for ``x < y``: true once the enclosures separate
    with x below, false once they separate with y below, no mass before."""
    s_true, _ = real_lt(x, y)
    s_false, _ = real_lt(y, x)
    return g_lt(s_true, s_false)


def denote_rec(fname: str, param: str, body: Term, env: Mapping[str, Any], rec_fuel: int) -> Closure:
    """The rec_fuel-th iterate of the recursion functional, started at bottom."""
    env = dict(env)
    f = Closure(lambda _v: g_bottom())
    for _ in range(rec_fuel):
        f = _unfold(fname, param, body, env, rec_fuel, f)
    return f


def _unfold(fname, param, body, env, k, prev: Closure) -> Closure:
    return Closure(lambda v: _denote(body, {**env, fname: prev, param: v}, k))


def program_measure(core: Term, rec_fuel: int) -> GiryMeasure:
    if not is_core(core):
        raise TypeError("program_measure expects an elaborated core term")
    return denote(core, {}, rec_fuel)


def program_lub(core: Term) -> GiryMeasure:
    """The join over recursion depth. Depth i is read at fuel i, which keeps
    one index for recursion, Sierpinski fuel, integration grid and interval
    precision."""
    if not is_core(core):
        raise TypeError("program_lub expects an elaborated core term")
    return g_kleene_lub(lambda i: denote(core, {}, i), diagonal=True)
