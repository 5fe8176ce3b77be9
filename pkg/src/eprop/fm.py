"""Fortet-Mourier norm of finite-support signed measures.

For ``mu = sum_i w_i delta_{x_i}`` the supremum over test functions with
values in [0, 1] and Lipschitz constant at most 1 only sees the values
``f_i = f(x_i)``, and any feasible vector extends to the whole space.  The
norm is therefore the larger of the two linear programs

    maximize  +-sum_i w_i f_i
    s.t.      0 <= f_i <= 1,   f_i - f_j <= rho(x_i, x_j).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .measure import DiscreteMeasure
from .simplex import simplex_max
from .space import MetricSpace, SpaceMismatch

LP_TOL = 1e-9
MAX_SUPPORT = 1000
ORACLE_MAX_SUPPORT = 4


@dataclass
class FmResult:
    value: float
    points: tuple
    witness: np.ndarray
    """Optimal test-function values at ``points``; ``|<f, mu>| == value``."""


def _lp_matrices(dist: np.ndarray):
    n = dist.shape[0]
    rows = [np.eye(n)]
    rhs = [np.ones(n)]
    # pairs at distance >= 1 are implied by the box constraint
    ii, jj = np.nonzero((dist < 1.0) & ~np.eye(n, dtype=bool))
    if ii.size:
        pair_rows = np.zeros((ii.size, n))
        pair_rows[np.arange(ii.size), ii] = 1.0
        pair_rows[np.arange(ii.size), jj] = -1.0
        rows.append(pair_rows)
        rhs.append(dist[ii, jj])
    return np.vstack(rows), np.concatenate(rhs)


def fm_solve(mu: DiscreteMeasure, space: MetricSpace | None = None) -> FmResult:
    space = _check_space(mu, space)
    points = mu.points
    n = len(points)
    if n == 0:
        return FmResult(0.0, (), np.zeros(0))
    if n > MAX_SUPPORT:
        raise ValueError(f"support size {n} exceeds the FM solver cap {MAX_SUPPORT}")
    w = np.array([float(v) for v in mu.weights])
    A, b = _lp_matrices(space.distance_matrix(points))
    best = None
    for sign in (1.0, -1.0):
        res = simplex_max(sign * w, A, b, tol=LP_TOL)
        if best is None or res.value > best.value:
            best = res
    f = np.clip(best.x, 0.0, 1.0)
    return FmResult(max(best.value, 0.0), points, f)


def fm_norm(mu: DiscreteMeasure, space: MetricSpace | None = None) -> float:
    return fm_solve(mu, space).value


def fm_distance(mu: DiscreteMeasure, nu: DiscreteMeasure, space: MetricSpace | None = None) -> float:
    if mu.space != nu.space:
        raise SpaceMismatch(f"measures live on {mu.space.name} and {nu.space.name}")
    return fm_norm(mu - nu, space)


def fm_norm_oracle(mu: DiscreteMeasure, space: MetricSpace | None = None, step: float = 1e-3) -> float:
    """Best value of ``|<f, mu>|`` over test vectors on the grid ``{0, step, ..., 1}``.

    Grid constraints are difference constraints ``|g_i - g_j| <= D_ij`` in
    integer units, whose feasible set is closed under pointwise max and min.
    Once the values on one sign class of the support are fixed, the best
    completion on the other class is therefore its extreme feasible point,
    found by shortest-path closure.  Enumerating the smaller class alone
    gives the exact grid optimum of the full exhaustive search.
    """
    space = _check_space(mu, space)
    n = len(mu)
    if n == 0:
        return 0.0
    if n > ORACLE_MAX_SUPPORT:
        raise ValueError(f"oracle supports at most {ORACLE_MAX_SUPPORT} points, got {n}")
    if not 0 < step <= 0.1:
        raise ValueError("step must lie in (0, 0.1]")
    top = math.floor(1 / step + 1e-9)
    D = np.floor(space.distance_matrix(mu.points) / step + 1e-9).astype(np.int64)
    D = np.minimum(D, top)
    w = np.array([float(v) for v in mu.weights])
    best = max(_grid_max(w, D, top), _grid_max(-w, D, top))
    return best * step


def _grid_max(w: np.ndarray, D: np.ndarray, top: int) -> float:
    pos = np.flatnonzero(w > 0)
    neg = np.flatnonzero(w < 0)
    if len(pos) <= len(neg):
        fixed, free, upward = pos, neg, False
    else:
        fixed, free, upward = neg, pos, True

    p = len(fixed)
    grids = np.meshgrid(*([np.arange(top + 1)] * p), indexing="ij") if p else []
    G = np.stack([g.ravel() for g in grids], axis=1) if p else np.zeros((1, 0), dtype=np.int64)
    ok = np.ones(G.shape[0], dtype=bool)
    for a in range(p):
        for b in range(p):
            if a != b:
                ok &= G[:, a] - G[:, b] <= D[fixed[a], fixed[b]]

    rows = G.shape[0]
    ext = np.empty((rows, len(free)), dtype=np.int64)
    for q, i in enumerate(free):
        if upward:
            v = np.full(rows, top, dtype=np.int64)
            for a, j in enumerate(fixed):
                v = np.minimum(v, G[:, a] + D[i, j])
        else:
            v = np.zeros(rows, dtype=np.int64)
            for a, j in enumerate(fixed):
                v = np.maximum(v, G[:, a] - D[i, j])
        ext[:, q] = v
    for _ in range(len(free)):
        for q, i in enumerate(free):
            for r, k in enumerate(free):
                if q != r:
                    if upward:
                        ext[:, q] = np.minimum(ext[:, q], ext[:, r] + D[i, k])
                    else:
                        ext[:, q] = np.maximum(ext[:, q], ext[:, r] - D[i, k])
    for q, i in enumerate(free):
        ok &= (ext[:, q] >= 0) & (ext[:, q] <= top)
        for a, j in enumerate(fixed):
            ok &= np.abs(ext[:, q] - G[:, a]) <= D[i, j]

    obj = G @ w[fixed] + ext @ w[free]
    return float(obj[ok].max())


def grid_brute_force(mu: DiscreteMeasure, space: MetricSpace | None = None, step: float = 0.05) -> float:
    """Literal enumeration of every grid vector; only for tiny grids."""
    space = _check_space(mu, space)
    n = len(mu)
    if n == 0:
        return 0.0
    top = math.floor(1 / step + 1e-9)
    D = np.floor(space.distance_matrix(mu.points) / step + 1e-9).astype(np.int64)
    w = [float(v) for v in mu.weights]
    best = 0.0
    for g in product(range(top + 1), repeat=n):
        if all(abs(g[i] - g[j]) <= D[i, j] for i in range(n) for j in range(i + 1, n)):
            best = max(best, abs(sum(wi * gi for wi, gi in zip(w, g))))
    return best * step


def _check_space(mu: DiscreteMeasure, space: MetricSpace | None) -> MetricSpace:
    if space is None:
        return mu.space
    if space != mu.space:
        raise SpaceMismatch(f"measure lives on {mu.space.name}, not {space.name}")
    return space
