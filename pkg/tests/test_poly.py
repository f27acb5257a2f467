from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cetkit import QuotientRingSpec, RingSpec
from cetkit.poly import ParseError, RingError

from strategies import RINGS, polynomials

R = RINGS["QQ3"]
F = RINGS["GF7_3"]


def test_parse_and_print_roundtrip():
    f = R("3/2*x^2*y - z + 1")
    assert R(str(f)) == f
    assert R("x**2") == R("x^2")


def test_parse_errors():
    with pytest.raises(ParseError):
        R("x + + ")
    with pytest.raises(ParseError):
        R("q*x")


def test_field_validation():
    with pytest.raises(RingError):
        RingSpec(("x",), "GF(8)")


def test_finite_field_reduction():
    assert F("8*x") == F("x")
    assert F("x/3") == F("5*x")


def test_grevlex_leading_term():
    f = R("x*z^2 + y^3 + x^2*y")
    assert f.leading_monomial() == (2, 1, 0)
    assert R("x*z + y^2").leading_monomial() == (0, 2, 0)


def test_lex_order():
    L = RingSpec(("x", "y", "z"), "QQ", order="lex")
    assert L("y^5 + x").leading_monomial() == (1, 0, 0)


def test_weighted_homogeneity():
    W = RingSpec(("x", "y"), "QQ", weights=(1, 2))
    assert W("x^2 + y").is_homogeneous()
    assert not W("x + y").is_homogeneous()


def test_quotient_needs_homogeneous_generators():
    with pytest.raises(RingError):
        QuotientRingSpec(R, ["x^2 + y"])


def test_rational_coefficients_exact():
    f = R("1/3*x") * 3
    assert f == R("x")
    assert f.leading_coefficient() == Fraction(1)


def test_substitute():
    f = R("x^2 + y*z")
    assert f.substitute({"x": R("y + z"), "y": R("y"), "z": R("z")}) == R("y^2 + 2*y*z + z^2 + y*z")


@given(polynomials(R), polynomials(R), polynomials(R))
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == R.zero


@given(polynomials(F), polynomials(F))
def test_ring_axioms_mod_p(f, g):
    assert (f + g) * (f - g) == f * f - g * g


@given(polynomials(R, max_deg=3), st.integers(0, 3))
def test_power_matches_repeated_product(f, k):
    p = R.one
    for _ in range(k):
        p = p * f
    assert f**k == p


@given(polynomials(R))
def test_homogeneous_components_sum(f):
    parts = f.homogeneous_components()
    total = R.zero
    for d, part in parts.items():
        assert part.is_homogeneous()
        total = total + part
    assert total == f
