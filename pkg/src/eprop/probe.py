"""Numerical diagnostics for equicontinuity of dual iterates and stability.

Suprema over all ``n`` are truncated at ``n_max``; every report carries the
truncation index.  For the built-in kernels the iterates are eventually
absorbed at 0, so the truncated quantities settle well before the default.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .examples.circle import ex1_closed_form
from .examples.svc import SvcTree, T_eval, ex2_kernel, gap_below
from .fields import coordinate
from .fm import fm_distance
from .kernel import DEFAULT_SUPPORT_CAP, TransitionKernel, orbit
from .measure import DiscreteMeasure, ScalarField, delta, pair, pair_exact
from .space import CIRCLE, FINITE, dyadic_length, format_rational, format_real, is_dyadic, prefix_stats

DEFAULT_N_MAX = 64


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    return format_real(v)


@dataclass
class ModulusReport:
    z: object
    approach: list
    n_max: int
    values: list  # values[m][n] = |U^n f(x_m) - U^n f(z)|, n = 0..n_max
    modulus: list = field(default_factory=list)
    argmax: list = field(default_factory=list)

    def __post_init__(self):
        if not self.modulus:
            self.modulus = [max(row) for row in self.values]
            self.argmax = [row.index(mx) for row, mx in zip(self.values, self.modulus)]

    def csv_rows(self, space) -> list[list[str]]:
        rows = [["m", "x", "n", "value", "modulus"]]
        for m, (x, row) in enumerate(zip(self.approach, self.values), start=1):
            for n, v in enumerate(row):
                rows.append([str(m), space.format_point(x), str(n), format_real(v), format_real(self.modulus[m - 1])])
        return rows

    def summary(self, space) -> dict:
        entries = []
        for m, (x, mod, am) in enumerate(zip(self.approach, self.modulus, self.argmax), start=1):
            entry = {"m": m, "x": space.format_point(x), "modulus": format_real(mod), "argmax_n": am}
            if isinstance(mod, Fraction):
                entry["modulus_exact"] = format_rational(mod)
            entries.append(entry)
        return {"z": space.format_point(self.z), "n_max": self.n_max, "approach": entries}


def _dual_orbit(k: TransitionKernel, f: ScalarField, x, n_max: int, exact: bool, cap: int) -> list:
    pairing = pair_exact if exact else pair
    return [pairing(f, mu) for mu in orbit(k, delta(k.space, x), n_max, cap)]


def equicontinuity_modulus(
    k: TransitionKernel,
    f: ScalarField,
    z,
    approach: Sequence,
    n_max: int = DEFAULT_N_MAX,
    exact: bool | None = None,
    cap: int = DEFAULT_SUPPORT_CAP,
) -> ModulusReport:
    """``sup_{0 <= n <= n_max} |U^n f(x_m) - U^n f(z)|`` for each approach point ``x_m``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if not approach:
        raise ValueError("approach must contain at least one point")
    exact = f.rational if exact is None else exact
    z = k.space.validate(z)
    base = _dual_orbit(k, f, z, n_max, exact, cap)
    values = []
    pts = []
    for x in approach:
        x = k.space.validate(x)
        pts.append(x)
        row = _dual_orbit(k, f, x, n_max, exact, cap)
        values.append([abs(a - b) for a, b in zip(row, base)])
    return ModulusReport(z, pts, n_max, values)


def dyadic_approach(z, count: int) -> list[Fraction]:
    """``x_n = z + 2^-(K+n)``, n = 1..count, with ``K`` the binary length of ``z``."""
    z = Fraction(z)
    K = dyadic_length(z)
    return [z + Fraction(1, 1 << (K + n)) for n in range(1, count + 1)]


def halving_approach(z, count: int) -> list[Fraction]:
    z = Fraction(z)
    return [z + Fraction(1, 1 << k) for k in range(1, count + 1)]


def truncation_approach(z, lengths: Sequence[int]) -> list[Fraction]:
    """The ``K``-digit binary truncations of ``z`` for each ``K`` in ``lengths``."""
    z = Fraction(z)
    return [Fraction((z.numerator << K) // z.denominator, 1 << K) for K in lengths]


def dyadic_witness(z, f: ScalarField, n: int):
    """``|U^s f(x_n) - U^s f(z)|`` at ``s = K + n - 1`` for the circle kernel.

    Evaluated from the closed form of ``P^s``.  With ``f(0) = 0`` and
    ``f(1/2) = 1`` the value is ``2^-m`` for ``m`` the number of ones in
    ``z``, independently of ``n``.
    """
    z = Fraction(z)
    if not 0 <= z < 1:
        raise ValueError(f"{z} is not a circle point")
    if not is_dyadic(z):
        raise ValueError(f"{z} is not a dyadic rational")
    if n < 1:
        raise ValueError("n must be positive")
    K = dyadic_length(z)
    x = z + Fraction(1, 1 << (K + n))
    s = K + n - 1
    pairing = pair_exact if f.rational else pair
    return abs(pairing(f, ex1_closed_form(x, s)) - pairing(f, ex1_closed_form(z, s)))


def dyadic_witness_value(z) -> Fraction:
    """The predicted witness ``2^-m`` with ``m`` the digit sum of dyadic ``z``."""
    K = dyadic_length(z)
    m = prefix_stats(z, K)[0]
    return Fraction(1, 1 << m)


@dataclass(frozen=True)
class SvcWitness:
    value: object
    x: Fraction
    T: Fraction
    n0: int


def svc_witness_detail(z, tree: SvcTree, f: ScalarField | None = None) -> SvcWitness:
    f = coordinate() if f is None else f
    z = Fraction(z)
    gap = gap_below(z, tree)  # raises when z is not kept
    x = gap.interval.mid
    t = T_eval(x, tree).value
    n0 = 0
    while t < Fraction(1, 1 << (n0 + 1)):
        n0 += 1
    k = ex2_kernel(tree)
    exact = f.rational
    a = _dual_orbit(k, f, x, n0 + 1, exact, DEFAULT_SUPPORT_CAP)[-1]
    b = _dual_orbit(k, f, z, n0 + 1, exact, DEFAULT_SUPPORT_CAP)[-1]
    return SvcWitness(abs(a - b), x, t, n0)


def svc_witness(z, tree: SvcTree, f: ScalarField | None = None):
    """``|U^{n0+1} f(x) - U^{n0+1} f(z)|`` with ``x`` the peak of the deepest gap next to ``z``.

    ``n0`` is the least integer with ``T(x) >= 2^-(n0+1)``, so the orbit of
    ``x`` reaches ``2^n0 T(x)`` in ``[1/2, 1]`` while ``z`` goes straight to 0.
    """
    return svc_witness_detail(z, tree, f).value


@dataclass
class StabilityTrace:
    distances: list

    def csv_rows(self) -> list[list[str]]:
        return [["n", "distance"]] + [[str(n), _fmt(d)] for n, d in enumerate(self.distances)]


def stability_trace(
    k: TransitionKernel, mu0: DiscreteMeasure, target: DiscreteMeasure, n_max: int, cap: int = DEFAULT_SUPPORT_CAP
) -> StabilityTrace:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    return StabilityTrace([fm_distance(mu, target) for mu in orbit(k, mu0, n_max, cap)])


@dataclass
class BasinReport:
    ok: bool
    worst: float
    worst_x: object
    worst_n: int
    n_points: int


def ball_grid(space, center, radius, grid: int) -> list:
    """``2*grid + 1`` evenly spaced coordinates in ``[center - radius, center + radius]``."""
    if grid < 1:
        raise ValueError("grid must be at least 1")
    center, radius = Fraction(center), Fraction(radius)
    pts = []
    for j in range(-grid, grid + 1):
        x = center + radius * Fraction(j, grid)
        if space.kind == CIRCLE:
            x %= 1
        try:
            x = space.validate(x)
        except ValueError:
            continue
        if x not in pts:
            pts.append(x)
    return pts


def basin_probe(
    k: TransitionKernel,
    f: ScalarField,
    target: DiscreteMeasure,
    center,
    radius,
    grid: int,
    epsilon: float,
    n_from: int,
    n_max: int,
    cap: int = DEFAULT_SUPPORT_CAP,
) -> BasinReport:
    """Check ``|U^n f(x) - <f, target>| <= epsilon`` on a ball grid for ``n_from <= n <= n_max``."""
    if n_from > n_max:
        raise ValueError("n_from must not exceed n_max")
    if k.space.kind == FINITE:
        raise ValueError("ball grids need a coordinate space")
    exact = f.rational
    ref = pair_exact(f, target) if exact else pair(f, target)
    worst, worst_x, worst_n = -1, None, None
    pts = ball_grid(k.space, center, radius, grid)
    for x in pts:
        vals = _dual_orbit(k, f, x, n_max, exact, cap)
        for n in range(n_from, n_max + 1):
            dev = abs(vals[n] - ref)
            if dev > worst:
                worst, worst_x, worst_n = dev, x, n
    return BasinReport(worst <= epsilon, float(worst), worst_x, worst_n, len(pts))


def report_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()
