"""Seeded Monte-Carlo interpreter for closed Rml programs.

This is an operational cross-check, independent of the measure semantics.
Reals are dyadic rationals with 64 fractional bits: products, quotients and
elementary functions are rounded down to that grid (the elementary functions
via mpmath at 128 bits), sums and differences are exact. ``uniform`` draws
``k / 2**64`` with k uniform in ``1 .. 2**64 - 1``. Ties ``x < x`` are false.
A run returns None when it leaves a function's domain, exhausts its step
budget, or recurses too deeply.
"""

from __future__ import annotations

import random
from typing import Any, Optional

import mpmath

from ..rational import Q, dyadic_floor
from .syntax import (
    App, Bernoulli, BinOp, BoolLit, If, Lam, NatLit, Pair, Prim, RealLit, Rec, Term,
    Uniform, UnitLit, Var, is_core,
)
from .types import check_program

BITS = 64


class _Abort(Exception):
    pass


class _Fn:
    __slots__ = ("param", "body", "env", "fname")

    def __init__(self, param, body, env, fname=None):
        self.param, self.body, self.env, self.fname = param, body, env, fname


def _round(x):
    return dyadic_floor(x, BITS)


def _mp_round(fn, x):
    with mpmath.workprec(2 * BITS):
        v = fn(mpmath.mpf(int(x.numerator)) / int(x.denominator))
        if not mpmath.isfinite(v):
            raise _Abort
        sign, man, e, _ = mpmath.mpf(v)._mpf_
    q = Q(int(man)) * Q(2) ** int(e)
    return _round(-q if sign else q)


def _exp(x):
    if x > 10000:
        raise _Abort
    return _mp_round(mpmath.exp, x)


def _log(x):
    if x <= 0:
        raise _Abort
    return _mp_round(mpmath.log, x)


def _sqrt(x):
    if x < 0:
        raise _Abort
    return _mp_round(mpmath.sqrt, x)


def _div(a, b):
    if b == 0:
        raise _Abort
    return _round(a / b)


_UNARY = {"exp": _exp, "log": _log, "sin": lambda x: _mp_round(mpmath.sin, x),
          "sqrt": _sqrt, "neg": lambda x: -x}
_BINARY = {"+": lambda a, b: a + b, "-": lambda a, b: a - b,
           "*": lambda a, b: _round(a * b), "/": _div}


class _Machine:
    def __init__(self, seed: int, max_steps: int):
        self.rng = random.Random(seed)
        self.steps = max_steps

    def uniform(self):
        k = 0
        while k == 0:
            k = self.rng.getrandbits(BITS)
        return Q(k, 1 << BITS)

    def run(self, t: Term, env: dict):
        self.steps -= 1
        if self.steps < 0:
            raise _Abort
        if isinstance(t, NatLit):
            return int(t.value)
        if isinstance(t, RealLit):
            return _round(Q(t.value))
        if isinstance(t, BoolLit):
            return bool(t.value)
        if isinstance(t, UnitLit):
            return ()
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, Bernoulli):
            return self.rng.getrandbits(1) == 1
        if isinstance(t, Uniform):
            return self.uniform()
        if isinstance(t, Prim):
            a = self.run(t.arg, env)
            op = t.op
            if op == "succ":
                return a + 1
            if op == "pred":
                return a - 1 if a > 0 else 0
            if op == "zero":
                return a == 0
            if op == "nat_to_real":
                return Q(a)
            if op == "fst":
                return a[0]
            if op == "snd":
                return a[1]
            return _UNARY[op](a)
        if isinstance(t, BinOp):
            a = self.run(t.left, env)
            b = self.run(t.right, env)
            if t.op == "<":
                return a < b
            return _BINARY[t.op](a, b)
        if isinstance(t, If):
            return self.run(t.then if self.run(t.cond, env) else t.else_, env)
        if isinstance(t, Pair):
            a = self.run(t.first, env)
            return (a, self.run(t.second, env))
        if isinstance(t, Lam):
            return _Fn(t.param, t.body, env)
        if isinstance(t, Rec):
            return _Fn(t.param, t.body, env, t.fname)
        if isinstance(t, App):
            f = self.run(t.fn, env)
            a = self.run(t.arg, env)
            # tail calls run in a loop to keep the Python stack shallow
            while True:
                inner = dict(f.env)
                if f.fname is not None:
                    inner[f.fname] = f
                inner[f.param] = a
                body = f.body
                if isinstance(body, App):
                    self.steps -= 1
                    if self.steps < 0:
                        raise _Abort
                    f2 = self.run(body.fn, inner)
                    a = self.run(body.arg, inner)
                    f = f2
                    continue
                return self.run(body, inner)
        raise TypeError(f"not a core term: {type(t).__name__}")


def sample(t: Term, seed: int, max_steps: int = 100_000) -> Optional[Any]:
    """One seeded run of a closed program; None if it fails to produce a value."""
    if not is_core(t):
        t = check_program(t)[1]
    m = _Machine(seed, max_steps)
    try:
        return m.run(t, {})
    except (_Abort, RecursionError, ZeroDivisionError):
        return None


def sample_many(t: Term, n: int, seed: int = 0, max_steps: int = 100_000) -> list:
    """Runs with seeds ``seed, seed + 1, ..., seed + n - 1``."""
    if not is_core(t):
        t = check_program(t)[1]
    return [sample(t, s, max_steps) for s in range(seed, seed + n)]
