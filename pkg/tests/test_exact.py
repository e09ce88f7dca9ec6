"""Gaussian-rational scalars, binomials, shifts and rational roots."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hvtensor.exact import (
    ONE,
    ZERO,
    DivisionByZero,
    NonRationalRootsRemain,
    Scalar,
    binomial,
    format_scalar,
    parse_scalar,
    rational_roots,
    shifted_power,
)
from hvtensor.parsing import ParseError

from conftest import nonzero_scalars, rationals, scalars


def as_matrix(z: Scalar):
    """a+bi as the real 2x2 matrix [[a, -b], [b, a]]: an independent model of C."""
    return ((z.re, -z.im), (z.im, z.re))


def matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


@given(scalars, scalars)
def test_product_matches_matrix_model(x, y):
    assert as_matrix(x * y) == matmul(as_matrix(x), as_matrix(y))


@given(scalars, scalars, scalars)
def test_field_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == ZERO


@given(nonzero_scalars)
def test_inverse(x):
    assert x * x.inv() == ONE
    assert ONE / x == x.inv()


def test_division_by_zero_raises():
    with pytest.raises(DivisionByZero):
        ZERO.inv()
    with pytest.raises(DivisionByZero):
        Scalar(3) / 0


@given(scalars)
def test_print_parse_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@pytest.mark.parametrize("text, value", [
    ("3/2", Scalar(Fraction(3, 2))),
    ("-i", Scalar(0, -1)),
    ("3/2+1/4i", Scalar(Fraction(3, 2), Fraction(1, 4))),
    ("1 - 2i", Scalar(1, -2)),
    ("0", ZERO),
])
def test_parse_examples(text, value):
    assert parse_scalar(text) == value


def test_canonical_forms():
    assert format_scalar(Scalar(Fraction(3, 2), Fraction(1, 4))) == "3/2+1/4i"
    assert format_scalar(Scalar(0, -1)) == "-i"
    assert format_scalar(Scalar(Fraction(-4, 6))) == "-2/3"


@pytest.mark.parametrize("bad", ["", "1/0", "3//2", "1+", "abc"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_scalar(bad)


@given(st.integers(0, 30), st.integers(-3, 33))
def test_binomial_matches_math_comb(n, k):
    want = math.comb(n, k) if 0 <= k <= n else 0
    assert binomial(n, k) == want


@given(rationals, st.integers(0, 8))
def test_shifted_power_matches_repeated_multiplication(a, n):
    poly = {0: ONE}
    for _ in range(n):
        nxt = {}
        for e, c in poly.items():
            nxt[e + 1] = nxt.get(e + 1, ZERO) + c
            nxt[e] = nxt.get(e, ZERO) + c * a
        poly = {e: c for e, c in nxt.items() if c}
    assert shifted_power(a, n) == poly


@given(st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=4), min_size=1, max_size=5))
def test_rational_roots_recovers_planted_roots(roots):
    coeffs = [Fraction(1)]
    for r in roots:  # multiply by (x - r), coefficients low to high
        coeffs = [(coeffs[i - 1] if i > 0 else 0) - r * (coeffs[i] if i < len(coeffs) else 0)
                  for i in range(len(coeffs) + 1)]
    assert rational_roots(coeffs) == sorted(roots)


def test_irrational_roots_are_reported():
    with pytest.raises(NonRationalRootsRemain):
        rational_roots([-1, -1, 1])  # x^2 - x - 1
    assert rational_roots([-1, -1, 1], require_full=False) == []
