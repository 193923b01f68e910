"""Sierpinski truth values as fuel-indexed monotone semi-deciders.

A :class:`Sier` is a monotone boolean sequence ``approx(0) <= approx(1) <= ...``;
its semantic value is top iff the sequence is eventually true. Equality is only
observational: two values can be compared at a finite fuel budget, nothing more.
"""

from __future__ import annotations

from typing import Callable, Optional


class Sier:
    """A semi-decidable proposition, read at increasing fuel."""

    __slots__ = ("_fn", "_memo")

    def __init__(self, fn: Callable[[int], bool]):
        self._fn = fn
        self._memo: dict[int, bool] = {}

    def approx(self, n: int) -> bool:
        if n < 0:
            raise ValueError("fuel must be >= 0")
        try:
            return self._memo[n]
        except KeyError:
            v = bool(self._fn(n))
            self._memo[n] = v
            return v

    def first_true(self, budget: int) -> Optional[int]:
        """Smallest fuel <= budget at which the value has fired, else None."""
        for n in range(budget + 1):
            if self.approx(n):
                return n
        return None

    def holds_by(self, budget: int) -> bool:
        return self.approx(budget)

    def __repr__(self) -> str:
        return f"Sier(first_true<=16: {self.first_true(16)})"


class _ConstSier(Sier):
    __slots__ = ("_value",)

    def __init__(self, value: bool):
        self._value = bool(value)

    def approx(self, n: int) -> bool:
        if n < 0:
            raise ValueError("fuel must be >= 0")
        return self._value


_TOP = _ConstSier(True)
_BOT = _ConstSier(False)


def sier_top() -> Sier:
    return _TOP


def sier_bot() -> Sier:
    return _BOT


def sier_from_bool(b: bool) -> Sier:
    return _TOP if b else _BOT


def sier_after(k: Optional[int]) -> Sier:
    """True from fuel ``k`` on; ``None`` means never."""
    if k is None:
        return _BOT
    if k <= 0:
        return _TOP
    return Sier(lambda n: n >= k)


def meet(s: Sier, t: Sier) -> Sier:
    if s is _BOT or t is _BOT:
        return _BOT
    if s is _TOP:
        return t
    if t is _TOP:
        return s
    return Sier(lambda n: s.approx(n) and t.approx(n))


def join2(s: Sier, t: Sier) -> Sier:
    if s is _TOP or t is _TOP:
        return _TOP
    if s is _BOT:
        return t
    if t is _BOT:
        return s
    return Sier(lambda n: s.approx(n) or t.approx(n))


def countable_join(family: Callable[[int], Sier]) -> Sier:
    """Enumerable join, dovetailed: at fuel n consult members 0..n at fuel n."""
    members: dict[int, Sier] = {}

    def member(i: int) -> Sier:
        m = members.get(i)
        if m is None:
            m = members[i] = family(i)
        return m

    return Sier(lambda n: any(member(i).approx(n) for i in range(n + 1)))


def guard(s: Sier, k: Callable[[], Sier]) -> Sier:
    """Guarded conjunction ``s and k()``; ``k`` runs only once ``s`` has fired.

    This is the dominance rule: a proposition that is only known to be
    semi-decidable under the hypothesis ``s`` still yields a semi-decidable
    conjunction.
    """
    if s is _BOT:
        return _BOT
    forced: list[Sier] = []

    def fn(n: int) -> bool:
        if not s.approx(n):
            return False
        if not forced:
            forced.append(k())
        return forced[0].approx(n)

    return Sier(fn)
