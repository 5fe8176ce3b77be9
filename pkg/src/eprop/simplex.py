"""Dense tableau simplex for ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0``.

The origin is feasible when ``b >= 0``, so the slack basis starts the
method and no first phase is needed.  Pivoting follows Dantzig's rule and
falls back to Bland's rule after a run of degenerate pivots, which rules
out cycling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class LPError(RuntimeError):
    pass


class Unbounded(LPError):
    pass


@dataclass
class LPResult:
    x: np.ndarray
    value: float
    duals: np.ndarray
    iterations: int


def simplex_max(c, A, b, tol: float = 1e-9, max_iter: int = 50_000) -> LPResult:
    c = np.asarray(c, dtype=float)
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float)
    m, n = A.shape
    if c.shape != (n,) or b.shape != (m,):
        raise ValueError("shape mismatch between c, A and b")
    if np.any(b < 0):
        raise ValueError("simplex_max needs b >= 0 (origin must be feasible)")

    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :n] = -c
    basis = np.arange(n, n + m)

    degenerate_run = 0
    for it in range(max_iter):
        cost = T[m, :-1]
        if degenerate_run > 50:
            candidates = np.flatnonzero(cost < -tol)
            if candidates.size == 0:
                break
            j = candidates[0]
        else:
            j = int(np.argmin(cost))
            if cost[j] >= -tol:
                break
        col = T[:m, j]
        rows = np.flatnonzero(col > tol)
        if rows.size == 0:
            raise Unbounded("objective is unbounded above")
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + tol]
        i = ties[np.argmin(basis[ties])]
        degenerate_run = degenerate_run + 1 if T[i, -1] <= tol else 0

        T[i] /= T[i, j]
        others = np.flatnonzero(T[:, j] != 0)
        others = others[others != i]
        T[others] -= np.outer(T[others, j], T[i])
        basis[i] = j
    else:
        raise LPError(f"simplex did not converge in {max_iter} iterations")

    x = np.zeros(n + m)
    x[basis] = T[:m, -1]
    return LPResult(x=x[:n], value=float(T[m, -1]), duals=T[m, n : n + m].copy(), iterations=it)
