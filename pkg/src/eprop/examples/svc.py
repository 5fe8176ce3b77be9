"""Smith-Volterra-Cantor construction on [-2, -1] and the kernel built on it.

Level ``n`` removes an open interval of length ``4**-n`` from the middle of
each of the ``2**(n-1)`` closed intervals kept at level ``n - 1``.  The
bump map ``T`` is a parabola of height ``1/n`` on each level-``n`` gap and
vanishes on the SVC set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from ..kernel import TransitionKernel
from ..measure import DiscreteMeasure
from ..space import INTERVAL_UNION_SPACE, format_rational

MAX_DEPTH = 30
LEFT, RIGHT = Fraction(-2), Fraction(-1)


class Interval(NamedTuple):
    lo: Fraction
    hi: Fraction

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2


def kept_length(n: int) -> Fraction:
    """Length ``(2^n + 1) / (2 * 4^n)`` of each closed interval kept at level ``n``."""
    return Fraction((1 << n) + 1, 2 * 4**n)


def removed_length(n: int) -> Fraction:
    return Fraction(1, 4**n)


@lru_cache(maxsize=None)
def _kept_level(n: int) -> tuple:
    if n == 0:
        return (Interval(LEFT, RIGHT),)
    L = kept_length(n)
    out = []
    for a, b in _kept_level(n - 1):
        out.append(Interval(a, a + L))
        out.append(Interval(b - L, b))
    return tuple(out)


@dataclass(frozen=True)
class SvcClassification:
    status: str  # "removed" or "kept"
    level: int
    index: int  # 1-based, left to right within the level
    interval: Interval

    @property
    def removed(self) -> bool:
        return self.status == "removed"


@dataclass(frozen=True)
class TValue:
    value: Fraction
    exact: bool
    error_bound: Fraction
    classification: SvcClassification


@dataclass(frozen=True)
class SvcTree:
    """Depth-bounded SVC construction; interval lists are generated on demand."""

    depth: int

    def __post_init__(self):
        if not 1 <= self.depth <= MAX_DEPTH:
            raise ValueError(f"depth must lie in [1, {MAX_DEPTH}], got {self.depth}")

    def kept(self, n: int) -> list[Interval]:
        """The ``2**n`` closed intervals ``c_{n,k}``."""
        self._check_level(n, 0)
        return list(_kept_level(n))

    def removed(self, n: int) -> list[Interval]:
        """The ``2**(n-1)`` open gaps ``w_{n,k}``."""
        self._check_level(n, 1)
        L = kept_length(n)
        return [Interval(a + L, b - L) for a, b in _kept_level(n - 1)]

    def _check_level(self, n: int, lowest: int):
        if not lowest <= n <= self.depth:
            raise ValueError(f"level {n} outside [{lowest}, {self.depth}]")

    def classify(self, x) -> SvcClassification:
        return svc_classify(x, self)

    def to_json(self) -> dict:
        levels = []
        for n in range(self.depth + 1):
            entry = {"n": n, "kept": [[format_rational(a), format_rational(b)] for a, b in self.kept(n)]}
            if n >= 1:
                entry["removed"] = [[format_rational(a), format_rational(b)] for a, b in self.removed(n)]
            levels.append(entry)
        return {"depth": self.depth, "levels": levels}


def svc_build(depth: int) -> SvcTree:
    return SvcTree(depth)


def svc_classify(x, tree: SvcTree) -> SvcClassification:
    """Locate ``x`` in the construction by descending through the levels."""
    x = Fraction(x)
    if not LEFT <= x <= RIGHT:
        raise ValueError(f"{x} is outside [-2, -1]")
    a, b, j = LEFT, RIGHT, 1
    for n in range(1, tree.depth + 1):
        L = kept_length(n)
        if a + L < x < b - L:
            return SvcClassification("removed", n, j, Interval(a + L, b - L))
        if x <= a + L:
            b, j = a + L, 2 * j - 1
        else:
            a, j = b - L, 2 * j
    return SvcClassification("kept", tree.depth, j, Interval(a, b))


def T_eval(x, tree: SvcTree) -> TValue:
    """Value of the bump map at ``x``.

    Exact on removed gaps.  Points kept at the tree depth get 0, which is
    exact on the SVC set and off by at most ``1/(depth+1)`` elsewhere.
    """
    x = Fraction(x)
    cls = svc_classify(x, tree)
    if cls.removed:
        n = cls.level
        a, b = cls.interval
        return TValue(Fraction(4 ** (2 * n + 1), n) * (b - x) * (x - a), True, Fraction(0), cls)
    return TValue(Fraction(0), False, Fraction(1, tree.depth + 1), cls)


def ex2_kernel(tree: SvcTree) -> TransitionKernel:
    """Kernel on ``[-2,-1] u [0,1]`` using ``T`` truncated at the tree depth.

    [-2,-1]   -> delta_{T(x)}
    [0, 1/2)  -> delta_{2x}
    [1/2, 1]  -> (2x - 1) delta_0 + (2 - 2x) delta_1
    """
    half = Fraction(1, 2)

    def row(x: Fraction) -> DiscreteMeasure:
        if x <= RIGHT:
            acc = {T_eval(x, tree).value: Fraction(1)}
        elif x < half:
            acc = {2 * x: Fraction(1)}
        else:
            acc = {Fraction(0): 2 * x - 1}
            acc[Fraction(1)] = acc.get(Fraction(1), 0) + 2 - 2 * x
        return DiscreteMeasure._trusted(INTERVAL_UNION_SPACE, acc)

    return TransitionKernel(row, INTERVAL_UNION_SPACE, f"ex2[depth={tree.depth}]")


def gap_below(z, tree: SvcTree) -> SvcClassification:
    """The deepest stored gap inside the level ``depth - 1`` interval that keeps ``z``."""
    z = Fraction(z)
    cls = svc_classify(z, tree)
    if cls.removed:
        raise ValueError(f"{z} lies in the removed gap w_{{{cls.level},{cls.index}}}")
    n = tree.depth
    parent = (cls.index + 1) // 2
    L = kept_length(n)
    # z's kept interval is one child of the parent; the gap sits between the children
    if cls.index % 2:
        a = cls.interval.lo
        gap = Interval(a + L, a + kept_length(n - 1) - L)
    else:
        b = cls.interval.hi
        gap = Interval(b - kept_length(n - 1) + L, b - L)
    return SvcClassification("removed", n, parent, gap)
