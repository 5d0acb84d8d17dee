from __future__ import annotations

import random
from fractions import Fraction

import pytest

from affine_fibration.parsing import (
    MAX_EXPONENT,
    ParseError,
    parse_curve,
    parse_equation,
    parse_map,
    parse_pieces,
    parse_polynomial,
    parse_vars,
    parse_vector,
    print_polynomial,
)
from affine_fibration.polyalg import Polynomial

from helpers import random_poly

XY = ("x", "y")


def test_basic_expressions():
    assert parse_polynomial("x*y - 2", XY) == Polynomial(2, {(1, 1): 1, (0, 0): -2})
    assert parse_polynomial("(x + y)^2", XY) == parse_polynomial("x^2 + 2*x*y + y^2", XY)
    assert parse_polynomial("  x  ", XY) == Polynomial.variable(2, 0)


def test_unary_minus_binds_looser_than_power():
    assert parse_polynomial("-x^2", XY) == Polynomial(2, {(2, 0): -1})
    assert parse_polynomial("--x", XY) == Polynomial.variable(2, 0)
    assert parse_polynomial("x*-y", XY) == Polynomial(2, {(1, 1): -1})


def test_multichar_names():
    names = ("x1", "x10", "alpha_2")
    q = parse_polynomial("x10*alpha_2 + x1", names)
    assert q == Polynomial(3, {(0, 1, 1): 1, (1, 0, 0): 1})


@pytest.mark.parametrize(
    "text, offset",
    [
        ("x +", 3),
        ("x ++ y", 3),
        ("x y", 2),
        ("(x", 2),
        ("x)", 1),
        ("2x", 1),
        ("x $ y", 2),
        ("x^y", 2),
        ("1/0", 2),
        ("", 0),
    ],
)
def test_syntax_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text, XY)
    assert info.value.offset == offset


def test_unknown_variable_and_non_ascii():
    with pytest.raises(ParseError) as info:
        parse_polynomial("x + z", XY)
    assert info.value.offset == 4
    with pytest.raises(ParseError) as info:
        parse_polynomial("x + ξ", XY)
    assert info.value.offset == 4


def test_exponent_limit():
    assert parse_polynomial(f"x^{MAX_EXPONENT}", XY).total_degree() == MAX_EXPONENT
    with pytest.raises(ParseError, match="exceeds"):
        parse_polynomial(f"x^{MAX_EXPONENT + 1}", XY)


def test_vars_validation():
    assert parse_vars("a, b,c") == ["a", "b", "c"]
    for bad in ("a,a", "a,1b", "", "a,,b"):
        with pytest.raises(ValueError):
            parse_vars(bad)


def test_map_and_equations():
    comps = parse_map("x; y^2", XY)
    assert comps == [Polynomial.variable(2, 0), Polynomial(2, {(0, 2): 1})]
    with pytest.raises(ParseError) as info:
        parse_map("x; y +", XY)
    assert info.value.offset == 6
    assert parse_equation("x = y", XY) == parse_polynomial("x - y", XY)
    assert parse_equation("x", XY) == Polynomial.variable(2, 0)
    with pytest.raises(ParseError):
        parse_equation("x = y = 0", XY)
    pieces = parse_pieces("x=0,y=0;x=y", XY)
    assert [len(p) for p in pieces] == [2, 1]
    with pytest.raises(ParseError):
        parse_pieces("x=0;;y=0", XY)


def test_curve_literals():
    coeffs = parse_curve("(1,0,0,0)+t*(0,1,1,0)")
    assert coeffs == [(1, 0, 0, 0), (0, 1, 1, 0)]
    coeffs = parse_curve("(1/2,0) + t^2*(0,-1)")
    assert coeffs == [(Fraction(1, 2), 0), (0, 0), (0, -1)]
    assert parse_vector("(1, -2/3)") == (1, Fraction(-2, 3))
    for bad in ("t*(1,0)", "(1,0)+(1,0)", "(1,0)-t*(0,1)", "(1,x)", "(1,0)+t*(0,1)+t*(1,1)"):
        with pytest.raises(ParseError):
            parse_curve(bad)


def test_print_parse_round_trip():
    rng = random.Random(2024)
    names = ("u", "v", "w1")
    for _ in range(1000):
        q = random_poly(rng, 3, max_terms=6, max_deg=4, coeff=30)
        assert parse_polynomial(print_polynomial(q, names), names) == q
