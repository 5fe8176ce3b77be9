"""Lipschitz approximation of a continuous function from a finite cover.

Given centers ``x_1..x_N`` covering a compact set ``K`` with closed balls of
radius ``r/2``, the approximant is the convex combination

    L(x) = sum_i p_i(x) f(x_i),
    p_i(x) = (d_i(x) + c/N) / (sum_j d_j(x) + c),
    d_i(x) = 1 / (max(l * (rho(x, x_i) - r/2), 0) + 1),

and on ``K`` it stays within
``delta + 2 ||f|| (N - 1) (1/(l r/2 + 1) + c/N)`` of ``f``, where ``delta``
bounds the oscillation of ``f`` over pairs at distance at most ``r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .space import MetricSpace


@dataclass(frozen=True)
class CoverSpec:
    centers: tuple
    r: float
    c: float
    l: float
    fvals: tuple
    fbound: float
    delta: float
    space: MetricSpace

    def __post_init__(self):
        if len(self.centers) < 1:
            raise ValueError("a cover needs at least one center")
        if len(self.fvals) != len(self.centers):
            raise ValueError("one f value per center is required")
        if min(self.r, self.c, self.l) <= 0:
            raise ValueError("r, c and l must be positive")
        if any(abs(v) > self.fbound + 1e-12 for v in self.fvals):
            raise ValueError("f values exceed the declared bound")

    @property
    def N(self) -> int:
        return len(self.centers)


def _distances(spec: CoverSpec, x) -> np.ndarray:
    return np.array([spec.space.distance(x, xi) for xi in spec.centers])


def partition_weights(spec: CoverSpec, x) -> np.ndarray:
    d = 1.0 / (np.maximum(spec.l * (_distances(spec, x) - spec.r / 2), 0.0) + 1.0)
    return (d + spec.c / spec.N) / (d.sum() + spec.c)


def lip_eval(spec: CoverSpec, x) -> float:
    return float(partition_weights(spec, x) @ np.asarray(spec.fvals, dtype=float))


def error_bound(delta, fbound, N, r, c, l) -> float:
    return delta + 2 * fbound * (N - 1) * (1 / (l * r / 2 + 1) + c / N)


def choose_parameters(delta, fbound, N, r, epsilon) -> tuple[float, float]:
    """Pick ``(c, l)`` with ``error_bound(...) < epsilon``.

    Each of the two bracketed terms is held to ``(epsilon - delta) / (8 ||f|| (N-1))``,
    which leaves half of the slack ``epsilon - delta`` unused.
    """
    if delta >= epsilon:
        raise ValueError(f"delta={delta} must be smaller than epsilon={epsilon}")
    if N == 1 or fbound == 0:
        return 1.0, 1.0
    t = (epsilon - delta) / (8 * fbound * (N - 1))
    l = max((1 / t - 1) * 2 / r, 1.0)
    c = N * t
    return c, l


def greedy_cover(grid: Sequence, r: float, space: MetricSpace) -> list:
    """Farthest-point centers until every grid point is within ``r/2`` of one."""
    D = space.distance_matrix(list(grid))
    centers = [0]
    nearest = D[0].copy()
    while nearest.max() > r / 2:
        i = int(np.argmax(nearest))
        centers.append(i)
        nearest = np.minimum(nearest, D[i])
    return [grid[i] for i in centers]


def grid_oscillation(values: Sequence[float], grid: Sequence, r: float, space: MetricSpace) -> float:
    """Largest ``|f(x) - f(y)|`` over grid pairs with ``rho(x, y) <= r``."""
    D = space.distance_matrix(list(grid))
    v = np.asarray(values, dtype=float)
    diff = np.abs(v[:, None] - v[None, :])
    return float(diff[D <= r].max())


def build_cover_spec(
    f: Callable, grid: Sequence, r: float, epsilon: float, space: MetricSpace, fbound: float | None = None
) -> CoverSpec:
    """Cover, oscillation and parameters for approximating ``f`` on ``grid`` within ``epsilon``.

    Raises ValueError when the oscillation at scale ``r`` is not below ``epsilon``.
    """
    values = [float(f(x)) for x in grid]
    if fbound is None:
        fbound = max(abs(v) for v in values)
    delta = grid_oscillation(values, grid, r, space)
    centers = greedy_cover(grid, r, space)
    c, l = choose_parameters(delta, fbound, len(centers), r, epsilon)
    return CoverSpec(tuple(centers), r, c, l, tuple(float(f(x)) for x in centers), fbound, delta, space)


def spec_error_bound(spec: CoverSpec) -> float:
    return error_bound(spec.delta, spec.fbound, spec.N, spec.r, spec.c, spec.l)


def largest_admissible_r(f: Callable, grid: Sequence, epsilon: float, space: MetricSpace, r0: float) -> float:
    """Halve ``r0`` until the grid oscillation at that scale drops below ``epsilon``."""
    values = [float(f(x)) for x in grid]
    r = r0
    while grid_oscillation(values, grid, r, space) >= epsilon:
        r /= 2
        if r < 1e-12:
            raise ValueError("no admissible radius: f oscillates at every scale on this grid")
    return r


def lipschitz_quotient(spec: CoverSpec, points: Sequence) -> float:
    """Largest ``|L(x) - L(y)| / rho(x, y)`` over distinct pairs of ``points``."""
    vals = [lip_eval(spec, p) for p in points]
    best = 0.0
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            d = spec.space.distance(points[i], points[j])
            if d > 0:
                best = max(best, abs(vals[i] - vals[j]) / d)
    return best if math.isfinite(best) else math.inf
