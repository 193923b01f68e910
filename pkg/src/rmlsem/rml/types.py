"""Type inference for Rml and elaboration of surface terms into core terms.

Inference is plain first-order unification. Integer literals get a numeric
type variable that may only resolve to N or R and defaults to N. Arithmetic
and ``<`` act on R.

Elaboration fixes each integer literal as NatLit or RealLit and removes the
binding sugar: ``let x = M in P`` becomes ``(fun x -> P) M`` and the thunk
form ``let rec f = M`` becomes ``rec(f, _. M[f := f ()]) ()``.
"""

from __future__ import annotations

from itertools import count
from typing import Mapping, Optional

from .syntax import (
    B, N, R, UNIT, App, Bernoulli, BinOp, BoolLit, If, Lam, Let, LetRec, NatLit, Num,
    Pair, Prim, RealLit, Rec, RmlType, TArrow, TBool, TNat, TProd, TReal, TUnit, TVar,
    Term, Uniform, UnitLit, Var, children, show_type,
)


class RmlTypeError(Exception):
    def __init__(self, msg: str, pos: Optional[tuple] = None):
        where = f"{pos[0]}:{pos[1]}: " if pos else ""
        super().__init__(where + msg)
        self.msg, self.pos = msg, pos


_PRIM_SIG = {
    "succ": (N, N), "pred": (N, N), "zero": (N, B), "nat_to_real": (N, R),
    "exp": (R, R), "log": (R, R), "sin": (R, R), "sqrt": (R, R), "neg": (R, R),
}


class _Infer:
    def __init__(self):
        self.subst: dict[int, RmlType] = {}
        self.ids = count()
        self.lit_types: dict[int, RmlType] = {}

    def fresh(self, numeric: bool = False) -> TVar:
        return TVar(next(self.ids), numeric)

    def resolve(self, t: RmlType) -> RmlType:
        while isinstance(t, TVar) and t.id in self.subst:
            t = self.subst[t.id]
        return t

    def zonk(self, t: RmlType) -> RmlType:
        t = self.resolve(t)
        if isinstance(t, TProd):
            return TProd(self.zonk(t.left), self.zonk(t.right))
        if isinstance(t, TArrow):
            return TArrow(self.zonk(t.dom), self.zonk(t.cod))
        return t

    def occurs(self, v: TVar, t: RmlType) -> bool:
        t = self.resolve(t)
        if isinstance(t, TVar):
            return t.id == v.id
        if isinstance(t, TProd):
            return self.occurs(v, t.left) or self.occurs(v, t.right)
        if isinstance(t, TArrow):
            return self.occurs(v, t.dom) or self.occurs(v, t.cod)
        return False

    def unify(self, a: RmlType, b: RmlType, pos) -> None:
        a, b = self.resolve(a), self.resolve(b)
        if a == b:
            return
        if isinstance(b, TVar) and not isinstance(a, TVar):
            a, b = b, a
        if isinstance(a, TVar):
            if isinstance(b, TVar):
                if b.numeric and not a.numeric:
                    a, b = b, a
                # a may be numeric; b inherits that restriction
                self.subst[b.id] = a
                return
            if a.numeric and not isinstance(b, (TNat, TReal)):
                raise RmlTypeError(f"numeric literal used at type {show_type(self.zonk(b))}", pos)
            if self.occurs(a, b):
                raise RmlTypeError("infinite type", pos)
            self.subst[a.id] = b
            return
        if isinstance(a, TProd) and isinstance(b, TProd):
            self.unify(a.left, b.left, pos)
            self.unify(a.right, b.right, pos)
            return
        if isinstance(a, TArrow) and isinstance(b, TArrow):
            self.unify(a.dom, b.dom, pos)
            self.unify(a.cod, b.cod, pos)
            return
        raise RmlTypeError(
            f"type mismatch: expected {show_type(self.zonk(b))}, got {show_type(self.zonk(a))}", pos)

    def expect(self, term: Term, env, want: RmlType) -> None:
        got = self.infer(term, env)
        try:
            self.unify(got, want, term.pos)
        except RmlTypeError as e:
            if e.msg.startswith("type mismatch"):
                raise RmlTypeError(
                    f"expected {show_type(self.zonk(want))}, got {show_type(self.zonk(got))}",
                    term.pos) from None
            raise

    def infer(self, t: Term, env: Mapping[str, RmlType]) -> RmlType:
        if isinstance(t, Num):
            v = self.fresh(numeric=True)
            self.lit_types[id(t)] = v
            return v
        if isinstance(t, NatLit):
            return N
        if isinstance(t, RealLit):
            return R
        if isinstance(t, BoolLit):
            return B
        if isinstance(t, UnitLit):
            return UNIT
        if isinstance(t, Bernoulli):
            return B
        if isinstance(t, Uniform):
            return R
        if isinstance(t, Var):
            if t.name not in env:
                raise RmlTypeError(f"unbound variable {t.name}", t.pos)
            return env[t.name]
        if isinstance(t, Prim):
            if t.op in ("fst", "snd"):
                a, b = self.fresh(), self.fresh()
                self.expect(t.arg, env, TProd(a, b))
                return a if t.op == "fst" else b
            dom, cod = _PRIM_SIG[t.op]
            self.expect(t.arg, env, dom)
            return cod
        if isinstance(t, BinOp):
            self.expect(t.left, env, R)
            self.expect(t.right, env, R)
            return B if t.op == "<" else R
        if isinstance(t, If):
            self.expect(t.cond, env, B)
            a = self.infer(t.then, env)
            self.expect(t.else_, env, a)
            return a
        if isinstance(t, Pair):
            return TProd(self.infer(t.first, env), self.infer(t.second, env))
        if isinstance(t, Lam):
            pt = t.ptype if t.ptype is not None else self.fresh()
            return TArrow(pt, self.infer(t.body, {**env, t.param: pt}))
        if isinstance(t, App):
            ft = self.infer(t.fn, env)
            at = self.infer(t.arg, env)
            res = self.fresh()
            fr = self.resolve(ft)
            if not isinstance(fr, (TArrow, TVar)):
                raise RmlTypeError(f"applying a non-function of type {show_type(self.zonk(ft))}", t.pos)
            if isinstance(fr, TArrow):
                try:
                    self.unify(at, fr.dom, t.arg.pos)
                except RmlTypeError:
                    raise RmlTypeError(
                        f"argument has type {show_type(self.zonk(at))}, "
                        f"function expects {show_type(self.zonk(fr.dom))}", t.arg.pos or t.pos) from None
                return fr.cod
            self.unify(ft, TArrow(at, res), t.pos)
            return res
        if isinstance(t, Rec):
            return self.infer_rec(t.fname, t.ftype, t.param, t.ptype, None, t.body, env, t.pos)
        if isinstance(t, Let):
            vt = self.infer(t.value, env)
            if t.ann is not None:
                self.unify(vt, t.ann, t.value.pos or t.pos)
            return self.infer(t.body, {**env, t.name: vt})
        if isinstance(t, LetRec):
            if t.param is None:
                ft = t.rtype if t.rtype is not None else self.fresh()
                self.expect(t.value, {**env, t.fname: ft}, ft)
            else:
                ft = self.infer_rec(t.fname, None, t.param, t.ptype, t.rtype, t.value, env, t.pos)
            if t.body is None:
                return ft
            return self.infer(t.body, {**env, t.fname: ft})
        raise TypeError(f"not a term: {t!r}")

    def infer_rec(self, fname, ftype, param, ptype, rtype, body, env, pos) -> RmlType:
        a = ptype if ptype is not None else self.fresh()
        b = rtype if rtype is not None else self.fresh()
        ft = TArrow(a, b)
        if ftype is not None:
            self.unify(ft, ftype, pos)
        bt = self.infer(body, {**env, fname: ft, param: a})
        try:
            self.unify(bt, b, body.pos or pos)
        except RmlTypeError:
            raise RmlTypeError(
                f"body of {fname} has type {show_type(self.zonk(bt))}, "
                f"declared result {show_type(self.zonk(b))}", body.pos or pos) from None
        return ft

    def default_numeric(self) -> None:
        for v in self.lit_types.values():
            r = self.resolve(v)
            if isinstance(r, TVar):
                self.subst[r.id] = N


def infer_type(t: Term, ctx: Optional[Mapping[str, RmlType]] = None) -> tuple[RmlType, "_Infer"]:
    inf = _Infer()
    ty = inf.infer(t, dict(ctx or {}))
    inf.default_numeric()
    return inf.zonk(ty), inf


def typecheck(t: Term, ctx: Optional[Mapping[str, RmlType]] = None) -> RmlType:
    """Principal simple type of t in ctx (free type variables are left as TVar)."""
    return infer_type(t, ctx)[0]


# -- elaboration ---------------------------------------------------------------

def _thunk_calls(t: Term, f: str) -> Term:
    """Replace free occurrences of f by ``f ()``."""
    def go(t: Term) -> Term:
        if isinstance(t, Var):
            return App(t, UnitLit(pos=t.pos), pos=t.pos) if t.name == f else t
        if isinstance(t, Prim):
            return Prim(t.op, go(t.arg), pos=t.pos)
        if isinstance(t, BinOp):
            return BinOp(t.op, go(t.left), go(t.right), pos=t.pos)
        if isinstance(t, If):
            return If(go(t.cond), go(t.then), go(t.else_), pos=t.pos)
        if isinstance(t, Pair):
            return Pair(go(t.first), go(t.second), pos=t.pos)
        if isinstance(t, App):
            return App(go(t.fn), go(t.arg), pos=t.pos)
        if isinstance(t, Lam):
            return t if t.param == f else Lam(t.param, t.ptype, go(t.body), pos=t.pos)
        if isinstance(t, Rec):
            if f in (t.fname, t.param):
                return t
            return Rec(t.fname, t.ftype, t.param, t.ptype, go(t.body), pos=t.pos)
        return t
    return go(t)


def _fresh_param(t: Term, base: str = "_u") -> str:
    names = set()

    def walk(t):
        for attr in ("name", "param", "fname"):
            v = getattr(t, attr, None)
            if isinstance(v, str):
                names.add(v)
        for c in children(t):
            walk(c)
    walk(t)
    name, k = base, 0
    while name in names:
        k += 1
        name = f"{base}{k}"
    return name


def elaborate(t: Term, inf: _Infer) -> Term:
    def go(t: Term) -> Term:
        if isinstance(t, Num):
            ty = inf.resolve(inf.lit_types[id(t)])
            return RealLit(t.value, pos=t.pos) if isinstance(ty, TReal) else NatLit(t.value, pos=t.pos)
        if isinstance(t, Prim):
            return Prim(t.op, go(t.arg), pos=t.pos)
        if isinstance(t, BinOp):
            return BinOp(t.op, go(t.left), go(t.right), pos=t.pos)
        if isinstance(t, If):
            return If(go(t.cond), go(t.then), go(t.else_), pos=t.pos)
        if isinstance(t, Pair):
            return Pair(go(t.first), go(t.second), pos=t.pos)
        if isinstance(t, Lam):
            return Lam(t.param, t.ptype, go(t.body), pos=t.pos)
        if isinstance(t, App):
            return App(go(t.fn), go(t.arg), pos=t.pos)
        if isinstance(t, Rec):
            return Rec(t.fname, t.ftype, t.param, t.ptype, go(t.body), pos=t.pos)
        if isinstance(t, Let):
            return App(Lam(t.name, t.ann, go(t.body), pos=t.pos), go(t.value), pos=t.pos)
        if isinstance(t, LetRec):
            if t.param is None:
                value = go(t.value)
                u = _fresh_param(value)
                fn = Rec(t.fname, None, u, UNIT, _thunk_calls(value, t.fname), pos=t.pos)
                defn = App(fn, UnitLit(pos=t.pos), pos=t.pos)
            else:
                defn = Rec(t.fname, None, t.param, t.ptype, go(t.value), pos=t.pos)
            if t.body is None:
                return defn
            return App(Lam(t.fname, None, go(t.body), pos=t.pos), defn, pos=t.pos)
        return t
    return go(t)


def check_program(t: Term, ctx: Optional[Mapping[str, RmlType]] = None) -> tuple[RmlType, Term]:
    """Type and core term of a (surface) program."""
    ty, inf = infer_type(t, ctx)
    return ty, elaborate(t, inf)
