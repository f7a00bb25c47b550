from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import R2, R3, polynomials
from singlab.errors import ParseError, RingMismatchError
from singlab.field import GF, QQ, field_from_spec
from singlab.parser import infer_ring, parse_polynomial, variables_in
from singlab.poly import Ring, to_text


def test_parse_cusp():
    f = R2("x^2 + y^3")
    assert f.terms == {(2, 0): 1, (0, 3): 1}


def test_parse_two_terms_over_q():
    f = R2("3*x^2*y - 1/2")
    assert f.terms == {(2, 1): Fraction(3), (0, 0): Fraction(-1, 2)}
    assert len(f.terms) == 2


def test_double_caret_reports_column_three():
    with pytest.raises(ParseError) as err:
        R2("x^^2")
    assert err.value.line == 1 and err.value.column == 3


@pytest.mark.parametrize(
    "text",
    ["x y", "2x", "x^", "(x+y", "x+*y", "x^-1", "1/0", "x $ y"],
)
def test_malformed_input_is_rejected(text):
    with pytest.raises(ParseError):
        R2(text)


def test_unknown_variable_is_located():
    with pytest.raises(ParseError) as err:
        R2("x + w")
    assert err.value.column == 5


def test_multiline_position():
    with pytest.raises(ParseError) as err:
        R2("x +\n  y ^ ^")
    assert (err.value.line, err.value.column) == (2, 7)


def test_denominator_divisible_by_p():
    R = Ring(["x"], GF(7))
    with pytest.raises(ParseError):
        R("1/7*x")
    assert R("1/3*x") == R("5*x")  # 3 * 5 = 15 = 1 mod 7


def test_canonical_text():
    assert to_text(R2("-1/2*y^3 + 3*x^2*y")) == "3*x^2*y - 1/2*y^3"
    assert to_text(R2("0")) == "0"
    assert to_text(R2("-x")) == "-x"
    assert to_text(R2("(x+y)^2")) == "x^2 + 2*x*y + y^2"


def test_variables_are_naturally_sorted():
    assert variables_in("x10 + x2*x1") == ["x1", "x2", "x10"]
    assert infer_ring("y^2 + x").names == ("x", "y")


def test_field_specs():
    assert field_from_spec("q") == QQ
    assert field_from_spec("fp:101") == GF(101)
    with pytest.raises(ValueError):
        GF(15)


def test_mixing_rings_raises():
    with pytest.raises(RingMismatchError):
        R2("x") + R3("x")


def test_partial_derivatives():
    f = R3("x^3*y + 2*y*z^2 - 7")
    assert f.partial("x") == R3("3*x^2*y")
    assert f.partial(1) == R3("x^3 + 2*z^2")
    assert f.partial("z") == R3("4*y*z")


def test_partial_in_characteristic_p_loses_terms():
    R = Ring(["x"], GF(3))
    assert R("x^3 + x^2").partial(0) == R("2*x")


def test_substitute_and_evaluate():
    f = R2("x^2 + y")
    g = f.substitute([R2("x + y"), R2("x*y")], R2)
    assert g == R2("x^2 + 3*x*y + y^2")
    assert f.evaluate([2, 3]) == 7


def test_degree_and_order():
    f = R2("x^3 + x*y + y^5")
    assert f.degree() == 5 and f.ord() == 2
    assert R2("0").degree() == -1


def test_scalar_division_only():
    assert R2("2*x") / 2 == R2("x")
    with pytest.raises(TypeError):
        R2("x") / R2("y")


# --- ring axioms --------------------------------------------------------

P = polynomials(R3)


@given(P, P, P)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == R3.zero()
    assert a * R3.one() == a


@given(P)
def test_parse_print_round_trip(f):
    assert parse_polynomial(to_text(f), R3) == f


@given(polynomials(Ring(["x", "y"], GF(13)), coeffs=st.integers(-30, 30)))
def test_round_trip_mod_p(f):
    assert f.ring.parse(to_text(f)) == f


@given(P, st.integers(0, 3))
def test_power_matches_repeated_product(f, k):
    acc = R3.one()
    for _ in range(k):
        acc = acc * f
    assert f**k == acc


@given(P, P)
def test_leibniz_rule(a, b):
    for v in range(3):
        assert (a * b).partial(v) == a.partial(v) * b + a * b.partial(v)
