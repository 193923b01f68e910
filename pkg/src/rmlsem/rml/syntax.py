"""Abstract syntax for Rml terms and types, plus a printer that parses back.

Nodes are frozen dataclasses; the source position is carried for error
messages but ignored by equality, so a parsed term compares equal to the
re-parse of its printout.

``Num``, ``Let`` and ``LetRec`` only appear in surface terms. Type inference
elaborates them into the core nodes the evaluators understand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..rational import Q


# -- types ---------------------------------------------------------------------

@dataclass(frozen=True)
class RmlType:
    pass


@dataclass(frozen=True)
class TNat(RmlType):
    pass


@dataclass(frozen=True)
class TBool(RmlType):
    pass


@dataclass(frozen=True)
class TReal(RmlType):
    pass


@dataclass(frozen=True)
class TUnit(RmlType):
    pass


@dataclass(frozen=True)
class TProd(RmlType):
    left: RmlType
    right: RmlType


@dataclass(frozen=True)
class TArrow(RmlType):
    dom: RmlType
    cod: RmlType


@dataclass(frozen=True)
class TVar(RmlType):
    """Unknown during inference; ``numeric`` ones may only become N or R."""
    id: int
    numeric: bool = False


N, B, R, UNIT = TNat(), TBool(), TReal(), TUnit()


def show_type(t: RmlType, level: int = 0) -> str:
    # level 0: arrow allowed, 1: product operand, 2: atom
    if isinstance(t, TNat):
        return "N"
    if isinstance(t, TBool):
        return "B"
    if isinstance(t, TReal):
        return "R"
    if isinstance(t, TUnit):
        return "Unit"
    if isinstance(t, TVar):
        return f"'{'n' if t.numeric else 't'}{t.id}"
    if isinstance(t, TProd):
        s = f"{show_type(t.left, 2)} * {show_type(t.right, 2)}"
        return s if level < 1 else f"({s})"
    if isinstance(t, TArrow):
        s = f"{show_type(t.dom, 1)} -> {show_type(t.cod, 0)}"
        return s if level == 0 else f"({s})"
    raise TypeError(f"not a type: {t!r}")


def is_ground(t: RmlType) -> bool:
    if isinstance(t, TProd):
        return is_ground(t.left) and is_ground(t.right)
    return isinstance(t, (TNat, TBool, TReal, TUnit))


# -- terms ---------------------------------------------------------------------

@dataclass(frozen=True)
class Term:
    pos: Optional[tuple] = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Num(Term):
    """Integer literal whose type (N or R) is fixed by inference."""
    value: int


@dataclass(frozen=True)
class NatLit(Term):
    value: int


@dataclass(frozen=True)
class RealLit(Term):
    value: object  # exact rational


@dataclass(frozen=True)
class BoolLit(Term):
    value: bool


@dataclass(frozen=True)
class UnitLit(Term):
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str


PRIMS = ("succ", "pred", "zero", "nat_to_real", "exp", "log", "sin", "sqrt", "fst", "snd", "neg")


@dataclass(frozen=True)
class Prim(Term):
    op: str
    arg: Term


@dataclass(frozen=True)
class BinOp(Term):
    op: str  # + - * / <
    left: Term
    right: Term


@dataclass(frozen=True)
class If(Term):
    cond: Term
    then: Term
    else_: Term


@dataclass(frozen=True)
class Bernoulli(Term):
    pass


@dataclass(frozen=True)
class Uniform(Term):
    pass


@dataclass(frozen=True)
class Pair(Term):
    first: Term
    second: Term


@dataclass(frozen=True)
class Lam(Term):
    param: str
    ptype: Optional[RmlType]
    body: Term


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Rec(Term):
    fname: str
    ftype: Optional[RmlType]
    param: str
    ptype: Optional[RmlType]
    body: Term


@dataclass(frozen=True)
class Let(Term):
    name: str
    ann: Optional[RmlType]
    value: Term
    body: Term


@dataclass(frozen=True)
class LetRec(Term):
    """``let rec f x = M in N`` (param set) or the thunk form ``let rec f = M``,
    where each use of f inside M re-runs M. ``body`` is None when the
    definition is the whole program."""
    fname: str
    param: Optional[str]
    ptype: Optional[RmlType]
    rtype: Optional[RmlType]
    value: Term
    body: Optional[Term]


CORE_NODES = (NatLit, RealLit, BoolLit, UnitLit, Var, Prim, BinOp, If,
              Bernoulli, Uniform, Pair, Lam, App, Rec)


def children(t: Term) -> tuple:
    if isinstance(t, (Prim,)):
        return (t.arg,)
    if isinstance(t, BinOp):
        return (t.left, t.right)
    if isinstance(t, If):
        return (t.cond, t.then, t.else_)
    if isinstance(t, Pair):
        return (t.first, t.second)
    if isinstance(t, (Lam, Rec)):
        return (t.body,)
    if isinstance(t, App):
        return (t.fn, t.arg)
    if isinstance(t, Let):
        return (t.value, t.body)
    if isinstance(t, LetRec):
        return (t.value,) if t.body is None else (t.value, t.body)
    return ()


def is_core(t: Term) -> bool:
    return isinstance(t, CORE_NODES) and all(is_core(c) for c in children(t))


def count_nodes(t: Term, kind) -> int:
    return int(isinstance(t, kind)) + sum(count_nodes(c, kind) for c in children(t))


# -- printer -------------------------------------------------------------------
# precedence levels: 0 binder/if, 1 comparison, 2 additive, 3 multiplicative,
# 4 unary minus, 5 application, 6 atom

def _decimal(q) -> Optional[str]:
    q = Q(q)
    num, den = int(q.numerator), int(q.denominator)
    k = 0
    d = den
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d != 1:
        return None
    while 10 ** k % den:
        k += 1
    digits = str(abs(num) * (10 ** k // den)).rjust(k + 1, "0")
    s = digits[:-k] + "." + digits[-k:] if k else digits + ".0"
    return ("-" if num < 0 else "") + s


def _level(t: Term) -> int:
    if isinstance(t, (Let, LetRec, If, Lam)):
        return 0
    if isinstance(t, BinOp):
        return {"<": 1, "+": 2, "-": 2, "*": 3, "/": 3}[t.op]
    if isinstance(t, Prim):
        return 4 if t.op == "neg" else 5
    if isinstance(t, App):
        return 5
    if isinstance(t, RealLit) and t.value < 0:
        return 4
    if isinstance(t, RealLit) and _decimal(t.value) is None:
        return 3
    return 6


def _ann(name: str, t: Optional[RmlType]) -> str:
    return name if t is None else f"{name}: {show_type(t)}"


def show(t: Term, level: int = 0) -> str:
    s = _show(t)
    return s if _level(t) >= level else f"({s})"


def _show(t: Term) -> str:
    if isinstance(t, (Num, NatLit)):
        return str(t.value)
    if isinstance(t, RealLit):
        dec = _decimal(abs(Q(t.value)))
        body = dec if dec is not None else f"{abs(Q(t.value)).numerator}.0 / {Q(t.value).denominator}.0"
        return f"-{body}" if t.value < 0 else body
    if isinstance(t, BoolLit):
        return "true" if t.value else "false"
    if isinstance(t, UnitLit):
        return "()"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Bernoulli):
        return "bernoulli"
    if isinstance(t, Uniform):
        return "uniform"
    if isinstance(t, Prim):
        if t.op == "neg":
            return "-" + show(t.arg, 6)
        return f"{t.op}({show(t.arg)})"
    if isinstance(t, BinOp):
        if t.op == "<":
            return f"{show(t.left, 2)} < {show(t.right, 2)}"
        lv = _level(t)
        return f"{show(t.left, lv)} {t.op} {show(t.right, lv + 1)}"
    if isinstance(t, If):
        return f"if {show(t.cond)} then {show(t.then)} else {show(t.else_)}"
    if isinstance(t, Pair):
        return f"({show(t.first)}, {show(t.second)})"
    if isinstance(t, Lam):
        return f"fun ({_ann(t.param, t.ptype)}) -> {show(t.body)}"
    if isinstance(t, App):
        return f"{show(t.fn, 5)} {show(t.arg, 6)}"
    if isinstance(t, Rec):
        return f"rec({_ann(t.fname, t.ftype)}, {_ann(t.param, t.ptype)}. {show(t.body)})"
    if isinstance(t, Let):
        return f"let {_ann(t.name, t.ann)} = {show(t.value)} in {show(t.body)}"
    if isinstance(t, LetRec):
        head = f"let rec {t.fname}"
        if t.param is not None:
            head += f" ({_ann(t.param, t.ptype)})"
        if t.rtype is not None:
            head += f" : {show_type(t.rtype)}"
        s = f"{head} = {show(t.value)}"
        if t.body is not None:
            s += f" in {show(t.body)}"
        return s
    raise TypeError(f"not a term: {t!r}")
