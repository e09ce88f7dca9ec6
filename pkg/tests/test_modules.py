"""Concrete module families: actions, closed forms, axioms and criteria."""

import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from hvtensor.algebra import C, I, L
from hvtensor.analysis import module_axiom_check
from hvtensor.exact import Scalar
from hvtensor.linalg import Matrix, SparseVector
from hvtensor.modules import (
    HBarModuleData,
    HighestWeightData,
    IndModule,
    InvalidHBarModule,
    MVModule,
    OmegaModule,
    OmegaParams,
    PBWMonomial,
    degree2_module,
    degreen_module,
    hbar_validate,
    ind_depth,
    intermediate_module,
    omega_k_module,
    random_hbar,
    scalar_hbar,
)
from hvtensor.modules.kfamilies import (
    IRREDUCIBLE,
    NOT_DETERMINED,
    REDUCIBLE,
    a_irreducible,
    a_iso_check,
    intermediate_closed_form,
)

from conftest import real_scalars, scalars


def omega(lam, alpha, beta):
    return OmegaModule(OmegaParams(lam, alpha, beta))


class TestOmega:
    def test_example_action(self):
        M = omega(2, 3, 0)
        assert M.format_vector(M.act(L(1), M.parse_vector("1"))) == "2*d + 6"

    def test_i_action(self):
        M = omega(2, 3, 5)
        # I_1 d = 2 * 5 * (d - 1)
        assert M.format_vector(M.act(I(1), M.parse_vector("d"))) == "10*d - 10"

    def test_needs_nonzero_lambda(self):
        with pytest.raises(ValueError):
            OmegaParams(0, 1, 1)

    @given(st.integers(-4, 4), st.integers(0, 4))
    def test_shift_between_conventions(self, k, n):
        """The K-module lift with alpha+1 is the polynomial module with alpha."""
        a = omega(2, 3, 5)
        b = omega_k_module(2, 4, 5)
        for g in (L(k), I(k)):
            assert a.act_on_key(g, n) == b.act_on_key(g, n)


class TestAFamilies:
    @given(scalars, scalars, scalars, st.integers(-6, 6), st.integers(-6, 6))
    def test_intermediate_closed_form(self, gamma, alpha, beta, m, n):
        M = intermediate_module(gamma, alpha, beta)
        for g in (L(m), I(m)):
            assert M.act_on_key(g, n) == intermediate_closed_form(gamma, alpha, beta, g, n)

    def test_intermediate_examples(self):
        M = intermediate_module(Fraction(1, 2), 1, 2)
        assert M.format_vector(M.act(L(1), M.parse_vector("1"))) == "3/2*t"
        assert M.format_vector(M.act(I(2), M.parse_vector("1"))) == "2*t^2"

    def test_degree2_derived_action(self):
        M = degree2_module({1: 1}, 2, 0)
        # L_1 d = t (f + 2 d) with f = t
        assert M.format_vector(M.act(L(1), M.parse_vector("d"))) == "t^2 + 2*t*d"

    def test_degreen_derived_action(self):
        M = degreen_module(2, 2, 0)
        # (r + alpha k) t^(k+r) D^m + t^(k+r+1) D^(m+1)
        assert M.format_vector(M.act(L(1), M.parse_vector("t"))) == "t^3*D + 3*t^2"

    @pytest.mark.parametrize("build", [
        lambda: intermediate_module(Fraction(1, 3), 2, -1),
        lambda: degree2_module({-1: 2, 2: 1}, Fraction(1, 2), 3),
        lambda: degreen_module(1, 2, 1),
        lambda: degreen_module(3, -1, 0),
        lambda: omega_k_module(3, 2, 1),
    ])
    def test_axioms(self, build):
        assert module_axiom_check(build(), window=4, trials=60, seed=3).ok

    def test_irreducibility_table(self):
        assert a_irreducible(2, 0) == IRREDUCIBLE
        assert a_irreducible(0, 1) == IRREDUCIBLE
        assert a_irreducible(1, 0) == NOT_DETERMINED
        assert a_irreducible(1, 0, del_surjective=False) == REDUCIBLE
        assert a_irreducible(0, 0, is_natural_module=True) == REDUCIBLE
        assert a_irreducible(0, 0, is_natural_module=False) == IRREDUCIBLE

    def test_iso_table(self):
        assert a_iso_check((2, 1), (2, 1), same_k=True)
        assert not a_iso_check((2, 1), (2, 1), same_k=False)
        assert not a_iso_check((2, 1), (2, 2), same_k=True)
        assert a_iso_check((1, 0), (0, 0), same_k=True, del_surjective_a=True)
        assert not a_iso_check((1, 0), (0, 0), same_k=True)


class TestInd:
    hw = HighestWeightData(Fraction(1, 2), 3, 1, 2)

    def test_examples(self):
        M = IndModule(self.hw)
        v = M.hw_vector()
        assert M.act(L(1), M.act(L(-1), v)) == v * (-2 * self.hw.h)
        assert M.act(L(1), M.act(I(-1), v)) == v * (-self.hw.c0 + 2 * self.hw.c2)

    def test_words_are_straightened(self):
        M = IndModule(self.hw)
        # I_{-1} L_{-2} = L_{-2} I_{-1} + [I_{-1}, L_{-2}] and [I_{-1}, L_{-2}] = I_{-3}
        assert M.format_vector(M.parse_vector("[I(-1) L(-2) | v]")) == "[L(-2) I(-1) | v] + [I(-3) | v]"
        assert M.format_vector(M.parse_vector("[L(-2) I(-1) | v]")) == "[L(-2) I(-1) | v]"

    def test_central_elements(self):
        M = IndModule(self.hw)
        v = M.parse_vector("[L(-1) I(-2) | v]")
        assert M.act(C(1), v) == v * self.hw.c1
        assert M.act(I(0), v) == v * self.hw.c0

    @given(st.integers(0, 10**6))
    def test_positive_modes_past_depth_kill(self, seed):
        M = IndModule(self.hw)
        v = M.random_vector(random.Random(seed), max_depth=4)
        assume(v)
        K = ind_depth(v)
        for k in range(K, K + 3):
            assert not M.act(L(k), v)
            assert not M.act(I(k), v)

    def test_axioms_depth_four(self):
        M = IndModule(self.hw)

        class Deep:
            def __getattr__(self, name):
                return getattr(M, name)

            def random_vector(self, rng):
                return M.random_vector(rng, max_depth=4)

        assert module_axiom_check(Deep(), window=5, trials=80, seed=5).ok

    def test_c3_must_vanish(self):
        with pytest.raises(ValueError):
            HighestWeightData(1, 1, 0, 0, 1)

    def test_admissibility(self):
        assert HighestWeightData(1, 1, 0, 0).is_admissible()
        assert not HighestWeightData(1, 0, 0, 0).is_admissible()
        assert not HighestWeightData(1, 3, 0, 1).is_admissible()  # c0 + (n-1) c2 = 0 at n = -2


class TestMV:
    def test_scalar_example(self):
        V = scalar_hbar(2, 3)
        M = MVModule(V, OmegaParams(1, 0, 1))
        v = M.parse_vector("e0")
        # L_1 (e0 (x) 1) = e0 (x) t + 1 * Lbar_0 e0 = e0*t + 2 e0
        assert M.format_vector(M.act(L(1), v)) == "e0*t + 2*e0"
        assert M.act(I(0), v) == v * 3

    def test_invalid_module_rejected(self):
        bad = HBarModuleData(1, 0, 2,
                             (Matrix.from_rows([[0, 0], [0, 0]]), Matrix.from_rows([[0, 1], [0, 0]])),
                             (Matrix.from_rows([[1, 0], [0, 2]]), Matrix.from_rows([[0, 1], [0, 0]])))
        assert not hbar_validate(bad).ok
        with pytest.raises(InvalidHBarModule):
            MVModule(bad, OmegaParams(1, 0, 1))

    def test_json_round_trip(self):
        V = random_hbar(random.Random(4), 3, 2, 1)
        assert HBarModuleData.from_json(V.to_json()) == V

    @pytest.mark.parametrize("dim, r, d", [(1, 0, 0), (2, 1, 0), (2, 1, 1), (3, 2, 0), (3, 2, 1)])
    def test_axioms(self, dim, r, d):
        rng = random.Random(dim * 10 + r + d)
        M = MVModule(random_hbar(rng, dim, r, d), OmegaParams(2, Fraction(1, 3), -1))
        assert module_axiom_check(M, window=5, trials=60, seed=dim).ok

    @given(real_scalars, real_scalars)
    def test_i0_declared_scalar(self, sigma, tau):
        M = MVModule(scalar_hbar(sigma, tau), OmegaParams(3, 1, 2))
        v = M.parse_vector("e0*t^2 - e0")
        assert M.act(I(0), v) == v * (tau * 2)
