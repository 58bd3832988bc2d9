import math

import pytest

from purimap.riemann import INFINITY, RiemannPoint, as_riemann


def test_finite_point_roundtrip():
    p = RiemannPoint(1.5 - 0.25j)
    assert p.value == 1.5 - 0.25j
    assert not p.is_infinite


def test_infinity_is_distinguished_singleton():
    assert INFINITY.is_infinite
    assert INFINITY is RiemannPoint.INFINITY
    with pytest.raises(ValueError):
        INFINITY.value


@pytest.mark.parametrize("bad", [float("inf"), float("nan"),
                                 complex(0, float("inf")),
                                 complex(float("nan"), 0)])
def test_nonfinite_floats_rejected(bad):
    with pytest.raises(ValueError):
        RiemannPoint(bad)


def test_equality_and_hash():
    assert RiemannPoint(2.0) == RiemannPoint(2 + 0j)
    assert RiemannPoint(2.0) != RiemannPoint(3.0)
    assert RiemannPoint(1j) != INFINITY
    assert len({RiemannPoint(1.0), RiemannPoint(1.0), INFINITY}) == 2


def test_as_riemann_coercion():
    assert as_riemann(3).value == 3 + 0j
    assert as_riemann(0.5j).value == 0.5j
    assert as_riemann(INFINITY) is INFINITY
    assert math.isclose(as_riemann(RiemannPoint(2.0)).value.real, 2.0)
