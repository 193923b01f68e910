"""Lexer and recursive-descent parser for Rml concrete syntax.

Grammar (lowest precedence first)::

    expr  ::= let x [: T] = expr (; x [: T] = expr)* [;] in expr
            | let rec f [(x[: T]) | x] [: T] = expr [in expr]
            | if expr then expr else expr
            | fun x[: T] -> expr | fun (x: T) -> expr
            | cmp
    cmp   ::= add [< add]
    add   ::= mul ((+ | -) mul)*
    mul   ::= unary ((* | /) unary)*
    unary ::= - unary | app
    app   ::= (PRIM atom | atom) atom*
    atom  ::= INT | DECIMAL | true | false | bernoulli | uniform | IDENT | ()
            | (expr) | (expr, expr) | rec(f[: T], x[: T]. expr)

Comments run from ``--`` to the end of the line. A ``let rec`` without ``in``
is only allowed as the whole program.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ..rational import Q
from .syntax import (
    B, N, R, UNIT, App, Bernoulli, BinOp, BoolLit, If, Lam, Let, LetRec, Num, Pair,
    Prim, RealLit, Rec, RmlType, TArrow, TProd, Term, Uniform, UnitLit, Var,
)


class RmlSyntaxError(Exception):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.msg, self.line, self.col = msg, line, col


KEYWORDS = {"let", "rec", "in", "if", "then", "else", "fun", "true", "false",
            "bernoulli", "uniform"}
PRIM_NAMES = {"succ": "succ", "pred": "pred", "zero": "zero", "iszero": "zero",
              "nat_to_real": "nat_to_real", "exp": "exp", "log": "log", "ln": "log",
              "sin": "sin", "sqrt": "sqrt", "fst": "fst", "snd": "snd"}
TYPE_NAMES = {"N": N, "B": B, "R": R, "Unit": UNIT}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>--[^\n]*)
  | (?P<dec>\d+\.\d+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>->|[-+*/<=(),;:.])
""", re.VERBOSE)


@dataclass
class Tok:
    kind: str  # int dec ident kw prim op eof
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Tok]:
    toks = []
    line, start = 1, 0
    i = 0
    while i < len(src):
        m = _TOKEN.match(src, i)
        if m is None:
            raise RmlSyntaxError(f"unexpected character {src[i]!r}", line, i - start + 1)
        kind = m.lastgroup
        text = m.group()
        col = i - start + 1
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind == "ident":
            if text in KEYWORDS:
                kind = "kw"
            elif text in PRIM_NAMES:
                kind = "prim"
            toks.append(Tok(kind, text, line, col))
        elif kind not in ("ws", "comment"):
            toks.append(Tok(kind, text, line, col))
        i = m.end()
    toks.append(Tok("eof", "", line, i - start + 1))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    # token helpers

    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def at_op(self, text: str) -> bool:
        return self.at("op", text)

    def at_kw(self, text: str) -> bool:
        return self.at("kw", text)

    def advance(self) -> Tok:
        t = self.tok
        self.i += 1
        return t

    def error(self, msg: str, tok: Optional[Tok] = None):
        t = tok or self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise RmlSyntaxError(f"{msg}, found {found}", t.line, t.col)

    def expect_op(self, text: str) -> Tok:
        if not self.at_op(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def expect_kw(self, text: str) -> Tok:
        if not self.at_kw(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def ident(self) -> str:
        if not self.at("ident"):
            self.error("expected an identifier")
        return self.advance().text

    # types

    def type_(self) -> RmlType:
        left = self.prod_type()
        if self.at_op("->"):
            self.advance()
            return TArrow(left, self.type_())
        return left

    def prod_type(self) -> RmlType:
        t = self.base_type()
        while self.at_op("*"):
            self.advance()
            t = TProd(t, self.base_type())
        return t

    def base_type(self) -> RmlType:
        tok = self.tok
        if tok.kind == "ident" and tok.text in TYPE_NAMES:
            self.advance()
            return TYPE_NAMES[tok.text]
        if tok.kind == "int" and tok.text == "1":
            self.advance()
            return UNIT
        if self.at_op("("):
            self.advance()
            t = self.type_()
            self.expect_op(")")
            return t
        self.error("expected a type")

    # terms

    def program(self) -> Term:
        if self.at_kw("let") and self.toks[self.i + 1].kind == "kw" and self.toks[self.i + 1].text == "rec":
            t = self.let_rec(top=True)
        else:
            t = self.expr()
        if not self.at("eof"):
            self.error("expected end of input")
        return t

    def expr(self) -> Term:
        if self.at_kw("let"):
            if self.toks[self.i + 1].kind == "kw" and self.toks[self.i + 1].text == "rec":
                return self.let_rec(top=False)
            return self.let()
        if self.at_kw("if"):
            tok = self.advance()
            c = self.expr()
            self.expect_kw("then")
            a = self.expr()
            self.expect_kw("else")
            b = self.expr()
            return If(c, a, b, pos=(tok.line, tok.col))
        if self.at_kw("fun"):
            return self.fun()
        return self.cmp()

    def binding_name(self):
        name = self.ident()
        ann = None
        if self.at_op(":"):
            self.advance()
            ann = self.type_()
        return name, ann

    def let(self) -> Term:
        tok = self.expect_kw("let")
        binds = []
        while True:
            btok = self.tok
            name, ann = self.binding_name()
            self.expect_op("=")
            binds.append((name, ann, self.expr(), (btok.line, btok.col)))
            if self.at_op(";"):
                self.advance()
                if self.at_kw("in"):
                    break
                continue
            break
        self.expect_kw("in")
        body = self.expr()
        for name, ann, value, pos in reversed(binds):
            body = Let(name, ann, value, body, pos=pos)
        return body

    def let_rec(self, top: bool) -> Term:
        tok = self.expect_kw("let")
        self.expect_kw("rec")
        fname = self.ident()
        param = ptype = rtype = None
        if self.at("ident"):
            param = self.advance().text
        elif self.at_op("("):
            self.advance()
            param, ptype = self.binding_name()
            self.expect_op(")")
        if self.at_op(":"):
            self.advance()
            rtype = self.type_()
        self.expect_op("=")
        value = self.expr()
        body = None
        if self.at_kw("in"):
            self.advance()
            body = self.expr()
        elif not top:
            self.error("expected 'in'")
        return LetRec(fname, param, ptype, rtype, value, body, pos=(tok.line, tok.col))

    def fun(self) -> Term:
        tok = self.expect_kw("fun")
        if self.at_op("("):
            self.advance()
            name, ann = self.binding_name()
            self.expect_op(")")
        else:
            name = self.ident()
            ann = None
            if self.at_op(":"):
                self.advance()
                ann = self.prod_type()
        self.expect_op("->")
        return Lam(name, ann, self.expr(), pos=(tok.line, tok.col))

    def cmp(self) -> Term:
        left = self.add()
        if self.at_op("<"):
            tok = self.advance()
            right = self.add()
            if self.at_op("<"):
                self.error("comparisons do not chain")
            return BinOp("<", left, right, pos=(tok.line, tok.col))
        return left

    def add(self) -> Term:
        left = self.mul()
        while self.at_op("+") or self.at_op("-"):
            tok = self.advance()
            left = BinOp(tok.text, left, self.mul(), pos=(tok.line, tok.col))
        return left

    def mul(self) -> Term:
        left = self.unary()
        while self.at_op("*") or self.at_op("/"):
            tok = self.advance()
            left = BinOp(tok.text, left, self.unary(), pos=(tok.line, tok.col))
        return left

    def unary(self) -> Term:
        if self.at_op("-"):
            tok = self.advance()
            return Prim("neg", self.unary(), pos=(tok.line, tok.col))
        return self.app()

    def starts_atom(self) -> bool:
        t = self.tok
        if t.kind in ("int", "dec", "ident"):
            return True
        if t.kind == "kw":
            return t.text in ("true", "false", "bernoulli", "uniform", "rec")
        return t.kind == "op" and t.text == "("

    def app(self) -> Term:
        if self.at("prim"):
            tok = self.advance()
            if not self.starts_atom():
                self.error(f"{tok.text} expects an argument")
            fn = Prim(PRIM_NAMES[tok.text], self.atom(), pos=(tok.line, tok.col))
        else:
            fn = self.atom()
        while self.starts_atom():
            tok = self.tok
            fn = App(fn, self.atom(), pos=(tok.line, tok.col))
        return fn

    def atom(self) -> Term:
        tok = self.tok
        pos = (tok.line, tok.col)
        if tok.kind == "int":
            self.advance()
            return Num(int(tok.text), pos=pos)
        if tok.kind == "dec":
            self.advance()
            whole, frac = tok.text.split(".")
            return RealLit(Q(int(whole + frac), 10 ** len(frac)), pos=pos)
        if tok.kind == "ident":
            self.advance()
            return Var(tok.text, pos=pos)
        if tok.kind == "kw":
            if tok.text in ("true", "false"):
                self.advance()
                return BoolLit(tok.text == "true", pos=pos)
            if tok.text == "bernoulli":
                self.advance()
                return Bernoulli(pos=pos)
            if tok.text == "uniform":
                self.advance()
                return Uniform(pos=pos)
            if tok.text == "rec":
                return self.rec()
        if self.at_op("("):
            self.advance()
            if self.at_op(")"):
                self.advance()
                return UnitLit(pos=pos)
            first = self.expr()
            if self.at_op(","):
                self.advance()
                second = self.expr()
                self.expect_op(")")
                return Pair(first, second, pos=pos)
            self.expect_op(")")
            return first
        self.error("expected a term")

    def rec(self) -> Term:
        tok = self.expect_kw("rec")
        self.expect_op("(")
        fname, ftype = self.binding_name()
        self.expect_op(",")
        param, ptype = self.binding_name()
        self.expect_op(".")
        body = self.expr()
        self.expect_op(")")
        return Rec(fname, ftype, param, ptype, body, pos=(tok.line, tok.col))


def parse(src: str) -> Term:
    return _Parser(src).program()


def parse_type(src: str) -> RmlType:
    p = _Parser(src)
    t = p.type_()
    if not p.at("eof"):
        p.error("expected end of input")
    return t
