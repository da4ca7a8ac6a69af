import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minlag import INF, ComplexRational, ParseError, Polynomial, parse_point, parse_rational as P
from minlag.parser import format_complex, format_rational


def test_polynomial_and_quotients():
    assert P("z^3/3 + z").allclose(ComplexRational(Polynomial([0, 1, 0, 1 / 3])))
    r = P("(z^2+1)/z")
    assert r.num.allclose(Polynomial([1, 0, 1])) and r.den.allclose(Polynomial([0, 1]))
    r = P("-1/z^2")
    assert r.num.allclose(Polynomial([-1])) and r.den.allclose(Polynomial([0, 0, 1]))


def test_points():
    assert parse_point("inf") is INF
    assert parse_point("0") == 0
    assert parse_point("1+2i") == 1 + 2j
    assert parse_point("-3.5e-1i") == -0.35j


def test_precedence_and_associativity():
    assert P("1+2*z^2").allclose(P("1+(2*(z^2))"))
    assert P("2^3^2").allclose(P("512"))
    assert P("-z^2").allclose(ComplexRational(Polynomial([0, 0, -1])))
    assert P("8/2/2").allclose(P("2"))
    assert P("2i*z").allclose(ComplexRational(Polynomial([0, 2j])))


@pytest.mark.parametrize(
    "text",
    ["z^-1", "z^1.5", "z^z", "1/0", "w+1", "(z+1", "z+", "", "z^65", "2 3"],
)
def test_rejections_have_positions(text):
    with pytest.raises(ParseError) as err:
        P(text)
    assert err.value.detail()["code"] == "ParseError"


def test_point_must_be_constant():
    with pytest.raises(ParseError):
        parse_point("z+1")


def test_format_complex_reparses():
    for c in (0.0, -1.5, 2j, -0.25j, 1 - 1j, -3 + 4.5j):
        assert parse_point(format_complex(complex(c))) == c


coef = st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False).filter(lambda c: abs(c) > 1e-6)


@settings(max_examples=80, deadline=None)
@given(st.lists(coef, min_size=1, max_size=5), st.lists(coef, min_size=1, max_size=4))
def test_round_trip(num, den):
    r = ComplexRational(Polynomial(num), Polynomial(den))
    back = P(format_rational(r))
    assert np.allclose(back.num.coeffs, r.num.coeffs, rtol=1e-12, atol=0)
    assert np.allclose(back.den.coeffs, r.den.coeffs, rtol=1e-12, atol=0)
