"""Point representations and metrics for the built-in state spaces.

Points are plain :class:`fractions.Fraction` values everywhere except on
finite spaces, where they are hashable labels.  Coordinates stay exact;
only distances are evaluated in double precision.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Sequence

import numpy as np

CIRCLE = "circle"
INTERVAL_UNION = "ex2"
REAL_LINE = "real"
FINITE = "finite"

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*$")


class SpaceMismatch(ValueError):
    """Raised when objects living on different spaces are combined."""


def parse_rational(text: str, name: str = "value") -> Fraction:
    """Parse a ``"p/q"`` (or bare integer) literal into a Fraction.

    ``name`` is used in the error message so that callers can report which
    field was malformed.
    """
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    m = _RATIONAL_RE.match(str(text))
    if m is None:
        raise ValueError(f"{name}: malformed rational {text!r} (expected 'p/q')")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"{name}: zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def format_real(v) -> str:
    """12 significant digits, always with a decimal point (``1.0``, not ``1``)."""
    return repr(float(f"{float(v):.12g}"))


def unit_rational(x) -> Fraction:
    """Validate and return ``x`` as an exact rational in [0, 1)."""
    if isinstance(x, float):
        raise TypeError("circle points must be exact rationals, not floats")
    q = parse_rational(x, "x") if isinstance(x, str) else Fraction(x)
    if not 0 <= q < 1:
        raise ValueError(f"circle point {q} outside [0, 1)")
    return q


def circle_distance(x, y) -> float:
    """Chord length between the circle points with angles ``2*pi*x`` and ``2*pi*y``."""
    d = (Fraction(x) - Fraction(y)) % 1
    d = min(d, 1 - d)
    if d == 0:
        return 0.0
    return 2.0 * math.sin(math.pi * float(d))


def binary_digit(x, i: int) -> int:
    """The ``i``-th binary digit of ``x`` in [0, 1), terminating convention.

    Dyadic rationals get the expansion ending in zeros, never in ones.
    """
    if i < 1:
        raise ValueError("digit index starts at 1")
    x = Fraction(x)
    return (x.numerator << i) // x.denominator % 2


def prefix_stats(x, k: int) -> tuple[int, Fraction]:
    """Number of ones among the first ``k`` digits and the shifted remainder.

    Returns ``(m, y)`` with ``m = e_1(x) + ... + e_k(x)`` and
    ``y = 2**k * x - floor(2**k * x)``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    x = Fraction(x)
    scaled = x * (1 << k)
    head = scaled.numerator // scaled.denominator
    return head.bit_count(), scaled - head


def is_dyadic(x) -> bool:
    den = Fraction(x).denominator
    return den & (den - 1) == 0


def dyadic_length(x) -> int:
    """Smallest ``K`` such that every digit of ``x`` past position ``K`` is zero."""
    x = Fraction(x)
    if not is_dyadic(x):
        raise ValueError(f"{x} is not a dyadic rational")
    return x.denominator.bit_length() - 1


def in_interval_union(x) -> bool:
    x = Fraction(x)
    return -2 <= x <= -1 or 0 <= x <= 1


@dataclass(frozen=True)
class MetricSpace:
    """One of the built-in spaces, or a finite metric space given by a matrix.

    For ``kind == "finite"`` the points are the entries of ``labels`` and
    ``dist`` holds the symmetric distance matrix; the metric axioms are
    checked exhaustively at construction.
    """

    kind: str
    labels: tuple = ()
    dist: tuple = field(default=(), compare=True, repr=False)

    def __post_init__(self):
        if self.kind not in (CIRCLE, INTERVAL_UNION, REAL_LINE, FINITE):
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.kind == FINITE:
            _check_finite_metric(self.labels, self.dist)

    @property
    def name(self) -> str:
        return self.kind

    def _index(self):
        return {p: i for i, p in enumerate(self.labels)}

    def validate(self, x):
        """Return ``x`` in canonical form for this space, or raise ValueError."""
        if self.kind == FINITE:
            if x not in self.labels:
                raise ValueError(f"{x!r} is not a point of this finite space")
            return x
        if isinstance(x, float):
            raise TypeError("points must be exact rationals, not floats")
        q = parse_rational(x, "point") if isinstance(x, str) else Fraction(x)
        if self.kind == CIRCLE and not 0 <= q < 1:
            raise ValueError(f"circle point {q} outside [0, 1)")
        if self.kind == INTERVAL_UNION and not in_interval_union(q):
            raise ValueError(f"point {q} outside [-2,-1] u [0,1]")
        return q

    def distance(self, x, y) -> float:
        if self.kind == CIRCLE:
            return circle_distance(x, y)
        if self.kind == FINITE:
            idx = self._index()
            return float(self.dist[idx[x]][idx[y]])
        return float(abs(Fraction(x) - Fraction(y)))

    def distance_matrix(self, points: Sequence) -> np.ndarray:
        n = len(points)
        if n > 64 and self.kind != FINITE:
            # exact pairwise reduction is too slow here; agrees to a few ulps
            v = np.array([float(p) for p in points])
            d = np.abs(v[:, None] - v[None, :])
            if self.kind == CIRCLE:
                d = np.minimum(d % 1.0, 1.0 - d % 1.0)
                d = 2.0 * np.sin(np.pi * d)
            return d
        out = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                out[i, j] = out[j, i] = self.distance(points[i], points[j])
        return out

    def sort_key(self, x):
        if self.kind == FINITE:
            return self.labels.index(x)
        return x

    def parse_point(self, text, name: str = "point"):
        if self.kind == FINITE:
            return self.validate(text)
        return self.validate(parse_rational(text, name))

    def format_point(self, x) -> str:
        if self.kind == FINITE:
            return str(x)
        return format_rational(x)


def _check_finite_metric(labels: Sequence[Hashable], dist) -> None:
    n = len(labels)
    if len(set(labels)) != n:
        raise ValueError("finite space labels must be distinct")
    d = np.asarray(dist, dtype=float)
    if d.shape != (n, n):
        raise ValueError(f"distance matrix must be {n}x{n}")
    if np.any(d < 0) or not np.allclose(d, d.T, rtol=0, atol=0):
        raise ValueError("distance matrix must be symmetric and non-negative")
    off = d + np.eye(n)
    if np.any(np.diag(d) != 0) or np.any(off <= 0):
        raise ValueError("distance must vanish exactly on the diagonal")
    # d[i,k] <= d[i,j] + d[j,k] for all triples
    if np.any(d[:, None, :] > d[:, :, None] + d[None, :, :] + 1e-12):
        raise ValueError("distance matrix violates the triangle inequality")


def finite_space(labels: Sequence[Hashable], dist) -> MetricSpace:
    dist = tuple(tuple(float(v) for v in row) for row in dist)
    return MetricSpace(FINITE, tuple(labels), dist)


CIRCLE_SPACE = MetricSpace(CIRCLE)
INTERVAL_UNION_SPACE = MetricSpace(INTERVAL_UNION)
REAL_LINE_SPACE = MetricSpace(REAL_LINE)

BUILTIN_SPACES = {
    CIRCLE: CIRCLE_SPACE,
    INTERVAL_UNION: INTERVAL_UNION_SPACE,
    REAL_LINE: REAL_LINE_SPACE,
}


def get_space(name: str) -> MetricSpace:
    try:
        return BUILTIN_SPACES[name]
    except KeyError:
        raise ValueError(f"unknown space {name!r}; choose from {sorted(BUILTIN_SPACES)}") from None
