"""Finite-support signed measures with exact rational weights."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Optional

from .space import MetricSpace, SpaceMismatch, format_rational, get_space, parse_rational


def _as_weight(w) -> Fraction:
    if isinstance(w, float):
        raise TypeError("measure weights must be exact rationals, not floats")
    if isinstance(w, str):
        return parse_rational(w, "weight")
    return Fraction(w)


class DiscreteMeasure:
    """A signed measure ``sum_i w_i * delta_{x_i}`` on ``space``.

    Equal support points are merged on construction and zero weights are
    dropped, so two measures compare equal iff they are the same measure.
    """

    __slots__ = ("space", "_w")

    def __init__(self, space: MetricSpace, items: Iterable[tuple[Any, Any]] | Mapping = ()):
        if isinstance(items, Mapping):
            items = items.items()
        acc: dict = {}
        for x, w in items:
            x = space.validate(x)
            acc[x] = acc.get(x, 0) + _as_weight(w)
        self.space = space
        self._w = {x: w for x, w in sorted(acc.items(), key=lambda kv: space.sort_key(kv[0])) if w != 0}

    @classmethod
    def _trusted(cls, space: MetricSpace, acc: dict) -> "DiscreteMeasure":
        # skips validation; acc must hold already-canonical points
        out = cls.__new__(cls)
        out.space = space
        out._w = {x: w for x, w in sorted(acc.items(), key=lambda kv: space.sort_key(kv[0])) if w != 0}
        return out

    @property
    def points(self) -> tuple:
        return tuple(self._w)

    @property
    def weights(self) -> tuple:
        return tuple(self._w.values())

    def items(self):
        return self._w.items()

    def weight(self, x) -> Fraction:
        return self._w.get(x, Fraction(0))

    @property
    def mass(self) -> Fraction:
        return sum(self._w.values(), Fraction(0))

    def __len__(self):
        return len(self._w)

    def is_zero(self) -> bool:
        return not self._w

    def is_nonnegative(self) -> bool:
        return all(w > 0 for w in self._w.values())

    def is_probability(self) -> bool:
        return self.is_nonnegative() and self.mass == 1

    def __eq__(self, other):
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        return self.space == other.space and self._w == other._w

    __hash__ = None

    def __add__(self, other):
        return combine(1, self, 1, other)

    def __sub__(self, other):
        return combine(1, self, -1, other)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, a):
        return self.scale(a)

    __rmul__ = __mul__

    def scale(self, a) -> "DiscreteMeasure":
        a = _as_weight(a)
        return DiscreteMeasure._trusted(self.space, {x: a * w for x, w in self._w.items()})

    def __repr__(self):
        if not self._w:
            return f"DiscreteMeasure({self.space.name}, 0)"
        terms = " + ".join(
            f"{format_rational(w)}*d[{self.space.format_point(x)}]" for x, w in self._w.items()
        )
        return f"DiscreteMeasure({self.space.name}, {terms})"

    def to_json(self) -> dict:
        return {
            "space": self.space.name,
            "points": [self.space.format_point(x) for x in self._w],
            "weights": [format_rational(w) for w in self._w.values()],
        }


def delta(space: MetricSpace, x) -> DiscreteMeasure:
    return DiscreteMeasure(space, [(x, 1)])


def zero_measure(space: MetricSpace) -> DiscreteMeasure:
    return DiscreteMeasure(space)


def combine(a, mu: DiscreteMeasure, b, nu: DiscreteMeasure) -> DiscreteMeasure:
    """Return ``a*mu + b*nu`` with coalesced support."""
    if mu.space != nu.space:
        raise SpaceMismatch(f"cannot combine measures on {mu.space.name} and {nu.space.name}")
    a, b = _as_weight(a), _as_weight(b)
    acc = {x: a * w for x, w in mu.items()}
    for x, w in nu.items():
        acc[x] = acc.get(x, 0) + b * w
    return DiscreteMeasure._trusted(mu.space, acc)


def tv_norm(mu: DiscreteMeasure) -> Fraction:
    return sum((abs(w) for w in mu.weights), Fraction(0))


@dataclass(frozen=True)
class ScalarField:
    """A bounded real function on a space.

    ``bound`` and ``lip`` are optional declared values of the sup norm and
    the Lipschitz constant.  ``rational`` marks evaluators that return exact
    Fractions on rational input, which lets pairings stay exact.
    """

    fn: Callable[[Any], Any]
    bound: Optional[float] = None
    lip: Optional[float] = None
    rational: bool = False
    name: str = "f"

    def __call__(self, x):
        v = self.fn(x)
        if self.bound is not None and abs(v) > self.bound + 1e-12:
            raise ValueError(f"{self.name}({x}) = {v} exceeds the declared bound {self.bound}")
        return v


def pair(f: ScalarField, mu: DiscreteMeasure) -> float:
    """``<f, mu> = sum_i w_i f(x_i)`` in double precision."""
    return math.fsum(float(w) * float(f(x)) for x, w in mu.items())


def pair_exact(f: ScalarField, mu: DiscreteMeasure) -> Fraction:
    """Exact pairing; ``f`` must return rationals at the support points."""
    total = Fraction(0)
    for x, w in mu.items():
        v = f(x)
        if isinstance(v, float):
            raise TypeError(f"{f.name} returned a float at {x}; exact pairing needs rationals")
        total += w * v
    return total


def measure_from_json(data: Mapping | str, space: MetricSpace | None = None) -> DiscreteMeasure:
    """Build a measure from ``{"space": ..., "points": [...], "weights": [...]}``.

    ``space`` overrides the ``"space"`` field (needed for finite spaces,
    which are not named in the file).
    """
    if isinstance(data, str):
        data = json.loads(data)
    if space is None:
        space = get_space(data.get("space", ""))
    points = data.get("points")
    weights = data.get("weights")
    if not isinstance(points, list) or not isinstance(weights, list):
        raise ValueError("measure JSON needs 'points' and 'weights' lists")
    if len(points) != len(weights):
        raise ValueError("'points' and 'weights' must have the same length")
    items = []
    for i, (p, w) in enumerate(zip(points, weights)):
        items.append((space.parse_point(p, f"points[{i}]"), parse_rational(w, f"weights[{i}]")))
    return DiscreteMeasure(space, items)


def load_measure(path, space: MetricSpace | None = None) -> DiscreteMeasure:
    with open(path) as fh:
        return measure_from_json(json.load(fh), space)
