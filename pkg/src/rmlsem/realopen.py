"""Finite unions of rational open intervals, formal real opens, and the raw
Lebesgue pre-valuation.

A :class:`RatOpenSet` is stored in canonical form: sorted, pairwise disjoint
components ``(a_i, b_i)`` with ``a_i < b_i <= a_{i+1}``. Components that touch
(``b_i == a_{i+1}``) stay separate because the shared endpoint is excluded.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable, Sequence

from .lowreal import LowerRealNN
from .rational import ZERO, as_q, fmt_q


class RatOpenSet:
    __slots__ = ("components",)

    def __init__(self, components: Sequence[tuple] = ()):
        comps = tuple((as_q(a), as_q(b)) for a, b in components)
        for i, (a, b) in enumerate(comps):
            if not a < b:
                raise ValueError(f"degenerate component ({a}, {b})")
            if i and comps[i - 1][1] > a:
                raise ValueError("components must be sorted and disjoint; use ros_normalize")
        self.components = comps

    def __contains__(self, q) -> bool:
        q = as_q(q)
        return any(a < q < b for a, b in self.components)

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatOpenSet) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        inner = ", ".join(f"({a}, {b})" for a, b in self.components)
        return f"RatOpenSet[{inner}]"

    def to_json(self) -> list:
        return [[fmt_q(a), fmt_q(b)] for a, b in self.components]

    @classmethod
    def from_json(cls, data: list) -> "RatOpenSet":
        return ros_normalize((a, b) for a, b in data)

    def hull(self):
        if not self.components:
            return None
        return self.components[0][0], self.components[-1][1]


EMPTY = RatOpenSet()


def ros_normalize(raw: Iterable[tuple]) -> RatOpenSet:
    """Canonical form of a union of open intervals; pairs with a >= b are dropped."""
    pairs = sorted((as_q(a), as_q(b)) for a, b in raw)
    out: list[list] = []
    for a, b in pairs:
        if not a < b:
            continue
        if out and a < out[-1][1]:
            if b > out[-1][1]:
                out[-1][1] = b
        else:
            out.append([a, b])
    return RatOpenSet([(a, b) for a, b in out])


def ros_interval(a, b) -> RatOpenSet:
    return ros_normalize([(a, b)])


def ros_union(x: RatOpenSet, y: RatOpenSet) -> RatOpenSet:
    return ros_normalize(x.components + y.components)


def ros_inter(x: RatOpenSet, y: RatOpenSet) -> RatOpenSet:
    out = []
    i = j = 0
    xs, ys = x.components, y.components
    while i < len(xs) and j < len(ys):
        a, b = xs[i]
        c, d = ys[j]
        lo, hi = max(a, c), min(b, d)
        if lo < hi:
            out.append((lo, hi))
        if b < d:
            i += 1
        else:
            j += 1
    return ros_normalize(out)


def ros_subset(x: RatOpenSet, y: RatOpenSet) -> bool:
    """Point-set inclusion; each component of x must sit inside one of y."""
    return all(any(c <= a and b <= d for c, d in y.components) for a, b in x.components)


def lambda_raw(x: RatOpenSet):
    """Total length: the sum of component widths."""
    return sum((b - a for a, b in x.components), ZERO)


def ros_shrink(x: RatOpenSet, eps) -> RatOpenSet:
    eps = as_q(eps)
    if eps <= 0:
        raise ValueError("eps must be > 0")
    return ros_normalize((a + eps, b - eps) for a, b in x.components)


class FormalOpen:
    """A monotone chain in the lattice of rational open sets."""

    __slots__ = ("_fn", "_memo")

    def __init__(self, chain: Callable[[int], RatOpenSet]):
        self._fn = chain
        self._memo: dict[int, RatOpenSet] = {}

    def chain(self, n: int) -> RatOpenSet:
        try:
            return self._memo[n]
        except KeyError:
            v = self._memo[n] = self._fn(n)
            return v


def fopen_lebesgue(u: FormalOpen) -> LowerRealNN:
    return LowerRealNN(lambda n: lambda_raw(u.chain(n)))


def ros_incl_excl_check(xs: Sequence[RatOpenSet]) -> bool:
    """Check inclusion-exclusion for the length of a union, by brute force:
    length(union) + sum_{|I| even} length(x_I) == sum_{|I| odd} length(x_I)."""
    if not 1 <= len(xs) <= 6:
        raise ValueError("need between 1 and 6 sets")
    union = EMPTY
    for x in xs:
        union = ros_union(union, x)
    even = odd = ZERO
    for k in range(1, len(xs) + 1):
        for idx in combinations(range(len(xs)), k):
            inter = xs[idx[0]]
            for i in idx[1:]:
                inter = ros_inter(inter, xs[i])
            if k % 2:
                odd += lambda_raw(inter)
            else:
                even += lambda_raw(inter)
    return lambda_raw(union) + even == odd
