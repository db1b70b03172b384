import math

import pytest
from hypothesis import given, strategies as st

from ivmono.errors import ConstructionError, DomainError
from ivmono.interval import (ONE, ZERO, Interval, add, format_interval, mul_pos, opposite,
                             parse_interval, scale, sub)

I = Interval


@pytest.mark.parametrize("x, y, expected", [
    (I(0.1, 0.2), I(0.3, 0.5), (0.4, 0.7)),
    (I(0, 0), I(0.3, 0.5), (0.3, 0.5)),
    (I(0.6, 0.8), I(0.5, 0.9), (1.1, 1.7)),
])
def test_add(x, y, expected):
    r = add(x, y)
    assert r.lo == pytest.approx(expected[0]) and r.hi == pytest.approx(expected[1])
    assert x + y == r


def test_add_can_leave_unit():
    assert not add(I(0.6, 0.8), I(0.5, 0.9)).in_unit()


def test_opposite():
    assert opposite(I(0.2, 0.5)) == I(-0.5, -0.2)
    assert opposite(ZERO) == ZERO
    assert -(-I(0.2, 0.5)) == I(0.2, 0.5)


def test_sub():
    r = sub(I(0.4, 0.6), I(0.1, 0.3))
    assert (r.lo, r.hi) == pytest.approx((0.1, 0.5))
    r = I(0.4, 0.6) - I(0.4, 0.6)
    assert (r.lo, r.hi) == pytest.approx((-0.2, 0.2))
    assert r != ZERO
    r = I(0.5, 0.5) - I(0.2, 0.2)
    assert r.is_degenerate() and r.lo == pytest.approx(0.3)


def test_mul_pos():
    assert mul_pos(I(0.2, 0.4), I(0.5, 0.5)) == I(0.1, 0.2)
    assert mul_pos(ONE, I(0.3, 0.7)) == I(0.3, 0.7)
    assert mul_pos(I(0.0, 0.5), I(0.0, 1.0)) == I(0.0, 0.5)
    with pytest.raises(DomainError):
        mul_pos(I(-0.1, 0.4), I(0.5, 0.5))


def test_scale():
    assert scale(2, I(0.1, 0.3)) == I(0.2, 0.6)
    assert scale(-2, I(0.1, 0.3)) == I(-0.6, -0.2)
    assert scale(0, I(0.1, 0.3)) == ZERO
    assert 2 * I(0.1, 0.3) == I(0.2, 0.6)


@pytest.mark.parametrize("lo, hi", [(0.5, 0.4), (math.nan, 1.0), (0.0, math.nan)])
def test_constructor_rejects(lo, hi):
    with pytest.raises(ConstructionError):
        Interval(lo, hi)


def test_predicates():
    assert I(0.3, 0.3).is_degenerate() and not I(0.3, 0.4).is_degenerate()
    assert I(0, 1).in_unit() and not I(-0.1, 0.5).in_unit() and not I(0.5, 1.1).in_unit()
    assert I(0.1, 0.2).is_positive() and not I(0.0, 0.2).is_positive()
    assert I(-0.3, -0.1).is_negative() and not I(-0.3, 0.0).is_negative()


def test_text_round_trip():
    for x in (I(0.1, 0.25), ZERO, I(-0.5, 1e-5)):
        assert parse_interval(format_interval(x)) == x
    assert format_interval(I(-0.0, 0.5)) == "[0.0,0.5]"
    assert parse_interval(" [ 0.25 , 0.75 ] ") == I(0.25, 0.75)
    assert parse_interval("0.5") == I(0.5, 0.5)
    with pytest.raises(ConstructionError):
        parse_interval("[0.7,0.2]")
    with pytest.raises(ConstructionError):
        parse_interval("[a,b]")


dyadic = st.integers(-16, 32).map(lambda k: k / 16)


@st.composite
def dyadic_intervals(draw):
    a, b = draw(dyadic), draw(dyadic)
    return Interval(min(a, b), max(a, b))


@given(dyadic_intervals(), dyadic_intervals(), dyadic_intervals())
def test_add_laws(x, y, z):
    assert add(x, y) == add(y, x)
    assert add(add(x, y), z) == add(x, add(y, z))
    assert add(x, ZERO) == x
    assert sub(x, y) == add(x, opposite(y))
    assert add(x, y).width == x.width + y.width
    assert sub(x, y).width == x.width + y.width


@given(dyadic_intervals(), st.floats(-4, 4), st.floats(-4, 4))
def test_scale_composition(x, a, b):
    lhs, rhs = scale(a, scale(b, x)), scale(a * b, x)
    assert lhs.lo == pytest.approx(rhs.lo, abs=1e-12)
    assert lhs.hi == pytest.approx(rhs.hi, abs=1e-12)


@given(dyadic, dyadic, st.integers(-8, 8).map(lambda k: k / 4))
def test_degenerate_closure(a, b, alpha):
    x, y = Interval.point(a), Interval.point(b)
    assert add(x, y) == Interval.point(a + b)
    assert sub(x, y) == Interval.point(a - b)
    assert opposite(x) == Interval.point(-a)
    assert scale(alpha, x) == Interval.point(alpha * a)
    if a >= 0 and b >= 0:
        assert mul_pos(x, y) == Interval.point(a * b)
