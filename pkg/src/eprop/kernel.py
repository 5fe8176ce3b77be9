"""Transition kernels and the Markov / dual operators they induce.

A kernel maps a point ``x`` to the probability measure ``pi(x, .)``.  The
Markov operator acts on measures, ``P mu = sum_i w_i pi(x_i, .)``, and the
dual operator on functions, ``U f(x) = <f, pi(x, .)>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Mapping

from .measure import DiscreteMeasure, ScalarField, delta, measure_from_json, pair, pair_exact
from .space import MetricSpace, SpaceMismatch, finite_space

DEFAULT_SUPPORT_CAP = 10**5


class SupportBudgetExceeded(RuntimeError):
    """The support of an iterated measure grew past the configured cap."""


@dataclass(frozen=True)
class TransitionKernel:
    row_fn: Callable[[Any], DiscreteMeasure]
    space: MetricSpace
    name: str = "kernel"

    def row(self, x) -> DiscreteMeasure:
        return self.row_fn(self.space.validate(x))


def apply_P(k: TransitionKernel, mu: DiscreteMeasure) -> DiscreteMeasure:
    if mu.space != k.space:
        raise SpaceMismatch(f"measure on {mu.space.name} passed to kernel on {k.space.name}")
    acc: dict = {}
    for x, w in mu.items():
        for y, v in k.row_fn(x).items():
            acc[y] = acc.get(y, 0) + w * v
    return DiscreteMeasure._trusted(k.space, acc)


def iterate_P(
    k: TransitionKernel, mu: DiscreteMeasure, n: int, cap: int = DEFAULT_SUPPORT_CAP
) -> DiscreteMeasure:
    """``P^n mu``, coalescing after every step."""
    if n < 0:
        raise ValueError("n must be non-negative")
    for _ in range(n):
        mu = apply_P(k, mu)
        if len(mu) > cap:
            raise SupportBudgetExceeded(f"support size {len(mu)} exceeds cap {cap}")
    return mu


def orbit(k: TransitionKernel, mu: DiscreteMeasure, n: int, cap: int = DEFAULT_SUPPORT_CAP):
    """Yield ``mu, P mu, ..., P^n mu``."""
    yield mu
    for _ in range(n):
        mu = apply_P(k, mu)
        if len(mu) > cap:
            raise SupportBudgetExceeded(f"support size {len(mu)} exceeds cap {cap}")
        yield mu


def apply_U(k: TransitionKernel, f: ScalarField, x, exact: bool = False):
    row = k.row(x)
    return pair_exact(f, row) if exact else pair(f, row)


def iterate_U(k: TransitionKernel, f: ScalarField, x, n: int, exact: bool = False):
    """``U^n f(x)`` through the measure route, ``<f, P^n delta_x>``."""
    mu = iterate_P(k, delta(k.space, x), n)
    return pair_exact(f, mu) if exact else pair(f, mu)


def dual_power(k: TransitionKernel, f: ScalarField, n: int, exact: bool = False) -> ScalarField:
    """``U^n f`` as a field, built by composing the dual operator ``n`` times.

    Each level memoizes its values, so repeated branches through the same
    point are evaluated once.  This never forms ``P^n delta_x`` and serves
    as the independent check of :func:`iterate_U`.
    """
    g = f
    for level in range(n):
        g = _dual_step(k, g, exact, f"U^{level + 1}{f.name}")
    return g


def _dual_step(k: TransitionKernel, g: ScalarField, exact: bool, name: str) -> ScalarField:
    cache: dict = {}

    def ug(x):
        if x not in cache:
            row = k.row_fn(x)
            if exact:
                cache[x] = sum((w * g.fn(y) for y, w in row.items()), Fraction(0))
            else:
                cache[x] = sum(float(w) * float(g.fn(y)) for y, w in row.items())
        return cache[x]

    return ScalarField(ug, bound=g.bound, rational=exact, name=name)


def kernel_from_table(space: MetricSpace, rows: Mapping[Any, DiscreteMeasure], name: str = "table"):
    """Kernel on a finite space given by one probability row per point."""
    missing = [x for x in space.labels if x not in rows]
    if missing:
        raise ValueError(f"kernel table has no row for {missing}")
    for x, row in rows.items():
        if row.space != space:
            raise SpaceMismatch(f"row {x!r} lives on another space")
        if not row.is_probability():
            raise ValueError(f"row {x!r} is not a probability measure")
    table = dict(rows)
    return TransitionKernel(table.__getitem__, space, name)


def kernel_from_json(data: Mapping | str) -> TransitionKernel:
    """Load a finite-space kernel.

    Format::

        {"space": {"points": ["a", "b"], "distance": [[0, 1], [1, 0]]},
         "rows": {"a": {"points": ["b"], "weights": ["1/1"]}, ...}}
    """
    if isinstance(data, str):
        data = json.loads(data)
    sp = data["space"]
    space = finite_space(sp["points"], sp["distance"])
    rows = {x: measure_from_json(r, space) for x, r in data["rows"].items()}
    return kernel_from_table(space, rows, data.get("name", "table"))
