"""Brackets of the twisted Heisenberg-Virasoro algebra."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hvtensor.algebra import C, I, L, LieElement, bracket, centrality_check, jacobi_check
from hvtensor.parsing import parse_generator, parse_lie

modes = st.integers(-8, 8)
generators = st.one_of(st.builds(L, modes), st.builds(I, modes), st.builds(C, st.integers(1, 3)))


def apply_operator(gen, poly):
    """Centreless realisation on Laurent polynomials: L_m = t^m (t d/dt), I_m = t^m."""
    out = {}
    for e, c in poly.items():
        if gen.kind == "L":
            if e:
                out[e + gen.index] = out.get(e + gen.index, 0) + e * c
        else:
            out[e + gen.index] = out.get(e + gen.index, 0) + c
    return {e: c for e, c in out.items() if c}


def element_on_poly(x: LieElement, poly):
    out = {}
    for g, c in x.items():
        if g.kind == "C":
            continue
        for e, a in apply_operator(g, poly).items():
            out[e] = out.get(e, 0) + c.re * a
    return {e: c for e, c in out.items() if c}


@given(st.one_of(st.builds(L, modes), st.builds(I, modes)), st.builds(L, modes), st.integers(-5, 5))
def test_noncentral_part_matches_operator_commutator(x, y, e):
    poly = {e: Fraction(1), e + 2: Fraction(3)}
    xy = {}
    for k, c in apply_operator(x, apply_operator(y, poly)).items():
        xy[k] = xy.get(k, 0) + c
    for k, c in apply_operator(y, apply_operator(x, poly)).items():
        xy[k] = xy.get(k, 0) - c
    xy = {k: c for k, c in xy.items() if c}
    assert element_on_poly(bracket(x, y), poly) == xy


@pytest.mark.parametrize("x, y, text", [
    (L(2), L(-2), "-4*L[0] + 1/2*C1"),
    (L(1), I(-1), "-I[0] + 2*C2"),
    (L(-2), I(2), "2*I[0] + 2*C2"),
    (I(1), I(-1), "-C3"),
    (I(3), I(2), "0"),
    (L(3), L(-3), "-6*L[0] + 2*C1"),
])
def test_bracket_table(x, y, text):
    assert str(bracket(x, y)) == text
    assert bracket(x, y) == parse_lie(text) if text != "0" else not bracket(x, y)


@given(generators, generators)
def test_antisymmetry(x, y):
    assert bracket(x, y) == -bracket(y, x)


def test_jacobi_exhaustive_small_window():
    assert jacobi_check(window=4, trials=10, seed=1).ok


def test_centrality():
    assert centrality_check(window=6).ok


def test_generator_text():
    assert parse_generator("L[-3]") == L(-3)
    assert parse_generator("I[2]") == I(2)
    assert parse_generator("C2") == C(2)
    assert str(L(-3)) == "L[-3]"
