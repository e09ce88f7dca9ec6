"""Tensor products Omega (x) ... (x) Ind: parameters, degree reduction, generation, filtration."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hvtensor.algebra import I, L
from hvtensor.exact import ONE, Scalar
from hvtensor.linalg import SparseEchelon, SparseVector
from hvtensor.modules import HighestWeightData, OmegaParams, PBWMonomial
from hvtensor.tensor import (
    OmegaTensorModule,
    PreconditionError,
    TensorModule,
    TensorParams,
    _family_basis,
    _omega_image,
    cyclic_generation_check,
    deg,
    deg_compare,
    descend_to_ground,
    irreducibility_witness,
    reduce_degree,
    submodule_chain_verify,
    tensor_iso_check,
)

HW = HighestWeightData(1, 1, 0, 0)
TP = TensorParams((OmegaParams(1, 3, 0), OmegaParams(2, 0, 5)), HW)


class TestParams:
    def test_equal_lambdas_rejected(self):
        with pytest.raises(ValueError):
            TensorParams((OmegaParams(1, 1, 0), OmegaParams(1, 2, 0)), HW)

    def test_alpha_and_beta_both_zero_rejected(self):
        with pytest.raises(ValueError):
            TensorParams((OmegaParams(1, 0, 0),), HW)

    def test_json_round_trip(self):
        assert TensorParams.from_json(TP.to_json()) == TP

    def test_iso_ignores_order_but_not_values(self):
        swapped = TensorParams(TP.factors[::-1], HW)
        assert tensor_iso_check(TP, swapped)
        other = TensorParams((OmegaParams(1, 3, 0), OmegaParams(2, 1, 5)), HW)
        assert not tensor_iso_check(TP, other)


class TestDegree:
    def test_order_is_lexicographic(self):
        assert deg_compare((1, 0), (0, 5)) > 0
        assert deg_compare((0, 2), (0, 2)) == 0
        assert deg_compare((0, 1), (0, 2)) < 0

    def test_deg_of_vector(self):
        M = TensorModule(TP)
        v = M.parse_vector("d1*d2^2 (x) [v] + d1^2 (x) [L(-1) | v] + d2^3 (x) [v]")
        assert deg(v) == (2, 0)

    @given(st.integers(0, 10**6))
    def test_reduce_degree_strictly_lowers(self, seed):
        M = TensorModule(TP)
        u = M.random_vector(random.Random(seed), max_exp=2, max_depth=2)
        if not u or not any(deg(u)):
            return
        v = reduce_degree(TP, u, M)
        assert v
        assert deg_compare(deg(v), deg(u)) < 0

    def test_descend_reaches_ground(self):
        M = TensorModule(TP)
        u = M.parse_vector("d1^2*d2 (x) [L(-1) | v] + 3*d2^2 (x) [I(-2) | v]")
        trace = []
        g = descend_to_ground(TP, u, M, trace)
        assert g and not any(deg(g))
        assert trace and all("k_samples" in step for step in trace)


class TestGeneration:
    def test_single_factor_generic_hw(self):
        tp = TensorParams((OmegaParams(1, 1, 0),), HighestWeightData(Fraction(1, 3), Fraction(2, 5), 1, Fraction(1, 2)))
        w = SparseVector.basis(PBWMonomial())
        r = cyclic_generation_check(tp, w, 2, 2)
        assert r.status == "pass"
        assert r.checks[0].actual["verdict"] == "FULL"

    def test_zero_cutoff_is_trivial(self):
        w = SparseVector.basis(PBWMonomial())
        r = cyclic_generation_check(TP, w, 0, 0)
        assert r.checks[0].actual["covered"] == r.checks[0].actual["target"] == 1

    def test_partial_is_inconclusive(self):
        w = SparseVector.basis(PBWMonomial())
        r = cyclic_generation_check(TP, w, 2, 2, window=1, extraction=False, margins=(0,), max_rows=5)
        assert r.status == "inconclusive"

    def test_witness_composes_descent_and_generation(self):
        M = TensorModule(TP)
        r = irreducibility_witness(TP, M.parse_vector("d1*d2 (x) [L(-1) | v]"), (1, 1), module=M)
        assert [c.name for c in r.checks] == ["descend-to-ground", "cyclic-generation"]
        assert r.ok


class TestFiltration:
    @pytest.mark.parametrize("convention", ["negated", "canonical"])
    def test_chain_instance(self, convention):
        r = submodule_chain_verify(1, Fraction(1, 2), 2, Fraction(1, 3), 0, 3, 4, 4, convention)
        assert r.ok, r.counterexample

    def test_beta_zero_and_alpha_zero_rejected(self):
        with pytest.raises(PreconditionError):
            submodule_chain_verify(1, 0, 0, 1, 1)

    def test_literal_quotient_parameter_fails_with_canonical_action(self):
        """With L_k d^n = lam^k (d + k alpha)(d - k)^n the quotient is not Omega(lam, s + a1 + a2)."""
        a1, b1, a2, b2 = Fraction(1, 2), Scalar(2), Fraction(1, 3), Scalar(0)
        M = OmegaTensorModule((OmegaParams(1, a1, b1), OmegaParams(1, a2, b2)))
        s = 1
        lower = SparseEchelon()
        for n in range(12):
            lower.add(_family_basis("A", 0, n))
        literal = OmegaParams(1, s + a1 + a2, b1 + b2)
        canonical = OmegaParams(1, a1 + a2 - s, b1 + b2)
        v = SparseVector._wrap(_family_basis("A", s, 1))
        img = M.act(L(1), v)
        lit_diff = img - SparseVector._wrap(_omega_image(L(1), literal, 1, "A", s))
        can_diff = img - SparseVector._wrap(_omega_image(L(1), canonical, 1, "A", s))
        assert not lower.contains(lit_diff)
        assert lower.contains(can_diff)
