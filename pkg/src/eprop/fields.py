"""Stock test functions used by the probes and the command line."""

from __future__ import annotations

import math
from fractions import Fraction

from .measure import ScalarField


def hat() -> ScalarField:
    """``t -> min(2t, 2(1-t))`` on the circle: 0 at 0, 1 at 1/2.

    Lipschitz constant 1/2 with respect to the chord metric.
    """
    return ScalarField(lambda t: min(2 * t, 2 * (1 - t)), bound=1.0, lip=0.5, rational=True, name="hat")


def coordinate() -> ScalarField:
    """``x -> x``; on the interval union this is bounded by 2."""
    return ScalarField(lambda x: Fraction(x), bound=2.0, lip=1.0, rational=True, name="coord")


def constant(v=1) -> ScalarField:
    v = Fraction(v)
    return ScalarField(lambda x: v, bound=float(abs(v)), lip=0.0, rational=True, name=f"const{v}")


def zero() -> ScalarField:
    return constant(0)


def circle_sine() -> ScalarField:
    """``t -> sin(2 pi t)``, the second coordinate of the embedded circle point."""
    return ScalarField(lambda t: math.sin(2 * math.pi * float(t)), bound=1.0, lip=1.0, name="sin")


FIELDS = {
    "hat": hat,
    "coord": coordinate,
    "one": constant,
    "zero": zero,
    "sin": circle_sine,
}


def get_field(name: str) -> ScalarField:
    try:
        return FIELDS[name]()
    except KeyError:
        raise ValueError(f"unknown field {name!r}; choose from {sorted(FIELDS)}") from None
