"""Points of the extended complex plane (the Riemann sphere).

The parameter plane of the reduced dynamics is the full sphere, so the
point at infinity must be a first-class value.  It is represented by a
dedicated singleton, never by large or non-finite floats: pole handling
and the point at infinity are implemented as explicit branches wherever
the maps are evaluated.
"""

from __future__ import annotations

import math


class RiemannPoint:
    """A finite complex number, or the distinguished point at infinity.

    Construct finite points with ``RiemannPoint(z)``; the point at
    infinity is the singleton ``RiemannPoint.INFINITY``.  Non-finite
    floats (inf/nan components) are rejected.
    """

    __slots__ = ("_value",)

    INFINITY: "RiemannPoint"

    def __init__(self, value):
        z = complex(value)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ValueError(
                "finite point required; use RiemannPoint.INFINITY for the "
                "point at infinity"
            )
        self._value = z

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @property
    def value(self) -> complex:
        """The finite complex value; raises for the point at infinity."""
        if self._value is None:
            raise ValueError("the point at infinity has no complex value")
        return self._value

    def __eq__(self, other):
        if not isinstance(other, RiemannPoint):
            return NotImplemented
        return self._value == other._value

    def __hash__(self):
        return hash(self._value)

    def __repr__(self):
        if self._value is None:
            return "RiemannPoint.INFINITY"
        return f"RiemannPoint({self._value!r})"


def _make_infinity() -> RiemannPoint:
    pt = object.__new__(RiemannPoint)
    pt._value = None
    return pt


RiemannPoint.INFINITY = _make_infinity()
INFINITY = RiemannPoint.INFINITY


def as_riemann(value) -> RiemannPoint:
    """Coerce a complex/float/int (or RiemannPoint) to a RiemannPoint."""
    if isinstance(value, RiemannPoint):
        return value
    return RiemannPoint(value)
