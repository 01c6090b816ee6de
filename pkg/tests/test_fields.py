import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from s4lie.errors import ContextError, ParseError
from s4lie.fields import Field, QuadExt, QQ


def test_rational_parse_reduces():
    assert QQ.parse("3/6") == mpq(1, 2)
    assert QQ.fmt(QQ.parse("3/6")) == "1/2"
    assert QQ.parse("-4/2") == mpq(-2)
    assert QQ.fmt(mpq(-2)) == "-2/1"


def test_rational_rejects_minus_on_denominator():
    with pytest.raises(ParseError):
        QQ.parse("1/-2")


def test_quadratic_parse_roundtrip():
    F = Field(-1)
    x = F.parse("1/2+-3/4*r")
    assert x == QuadExt(mpq(1, 2), mpq(-3, 4), -1)
    assert F.fmt(x) == "1/2+-3/4*r"
    assert F.fmt(F.parse("5/1")) == "5/1"


def test_sqrt_generator_squares_to_d():
    F = Field(-3)
    r = F.sqrt_gen
    assert r * r == F.from_int(-3)


def test_quadratic_inverse():
    F = Field(-1)
    x = F.make(mpq(1, 2), mpq(-3, 4))
    assert x * x.inverse() == F.one
    with pytest.raises(ZeroDivisionError):
        F.zero.inverse()


def test_context_mixing_is_an_error():
    x = Field(-1).sqrt_gen
    y = Field(-3).sqrt_gen
    with pytest.raises(ContextError):
        _ = x + y
    with pytest.raises(ContextError):
        QQ.parse("1/2*r")


def test_bad_field_parameters():
    for d in (0, 1, 4, 9, 12):
        with pytest.raises(ParseError):
            Field(d)


def test_int_interop():
    F = Field(-1)
    x = F.sqrt_gen
    assert (1 + x) - x == F.one
    assert 2 * x == x + x
    assert x != 1
    assert F.from_int(7) == 7


rationals = st.fractions(max_denominator=50).map(lambda f: mpq(f.numerator, f.denominator))


@st.composite
def quad_elements(draw, d=-1):
    return QuadExt(draw(rationals), draw(rationals), d)


@given(quad_elements(), quad_elements(), quad_elements())
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x
    assert x * y == y * x
    if z:
        assert (x * z) / z == x


@given(quad_elements())
def test_fmt_parse_roundtrip(x):
    F = Field(-1)
    assert F.parse(F.fmt(x)) == x
