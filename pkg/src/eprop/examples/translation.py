"""Unit translation ``x -> x + 1`` on the real line and its bump functions.

``U^n f(x) = f(x + n)``, so dual iterates are evaluated directly.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..kernel import TransitionKernel
from ..measure import DiscreteMeasure, ScalarField
from ..space import REAL_LINE_SPACE


def translation_kernel() -> TransitionKernel:
    return TransitionKernel(
        lambda x: DiscreteMeasure._trusted(REAL_LINE_SPACE, {x + 1: Fraction(1)}),
        REAL_LINE_SPACE,
        "translation",
    )


def bump_field(z) -> ScalarField:
    """``f_z``: on ``[z+n, z+n+2/(n+2))``, n >= 1, a parabola of height 1; zero elsewhere.

    Continuous and bounded by 1, but its slopes grow like ``2(n+2)``.
    """
    z = Fraction(z)

    def f(x):
        s = Fraction(x) - z
        n = math.floor(s)
        if n < 1 or s - n >= Fraction(2, n + 2):
            return Fraction(0)
        return (n + 2) ** 2 * (s - n) * (Fraction(2, n + 2) - (s - n))

    return ScalarField(f, bound=1.0, rational=True, name=f"bump[z={z}]")


def translate_U(f: ScalarField, x, n: int):
    return f(Fraction(x) + n)


def remark1_gap(z, m: int) -> Fraction:
    """``|f_z(z + m + 1/(m+2)) - f_z(z + m)|``; equal to 1 for every ``m >= 1``."""
    if m < 1:
        raise ValueError("m must be positive")
    z = Fraction(z)
    f = bump_field(z)
    return abs(f(z + m + Fraction(1, m + 2)) - f(z + m))
