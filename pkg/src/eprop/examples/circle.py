"""The doubling-with-reset kernel on the circle.

    pi(y, .) = delta_{2y}                         for 0 <= y < 1/2
    pi(y, .) = 1/2 delta_0 + 1/2 delta_{2y - 1}   for 1/2 <= y < 1

In binary, a leading 0 digit is shifted out, while a leading 1 digit sends
half of the mass to the fixed point 0 and shifts the rest.
"""

from __future__ import annotations

from fractions import Fraction

from ..kernel import TransitionKernel
from ..measure import DiscreteMeasure
from ..space import CIRCLE_SPACE, prefix_stats, unit_rational

HALF = Fraction(1, 2)


def _row(y: Fraction) -> DiscreteMeasure:
    if y < HALF:
        return DiscreteMeasure._trusted(CIRCLE_SPACE, {2 * y: Fraction(1)})
    z = 2 * y - 1
    if z == 0:
        return DiscreteMeasure._trusted(CIRCLE_SPACE, {Fraction(0): Fraction(1)})
    return DiscreteMeasure._trusted(CIRCLE_SPACE, {Fraction(0): HALF, z: HALF})


def ex1_kernel() -> TransitionKernel:
    return TransitionKernel(_row, CIRCLE_SPACE, "ex1")


def ex1_closed_form(x, k: int) -> DiscreteMeasure:
    """``P^k delta_x = (1 - 2^-m) delta_0 + 2^-m delta_y`` with ``(m, y) = prefix_stats(x, k)``."""
    x = unit_rational(x)
    m, y = prefix_stats(x, k)
    tail = Fraction(1, 1 << m)
    acc = {Fraction(0): 1 - tail}
    acc[y] = acc.get(y, 0) + tail
    return DiscreteMeasure._trusted(CIRCLE_SPACE, acc)
