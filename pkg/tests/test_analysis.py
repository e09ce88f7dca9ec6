"""Exponential-sum extraction, Prony recovery, fingerprints, T-operators and separations."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hvtensor.algebra import I, L, random_scalar
from hvtensor.analysis import (
    ExpSumSpec,
    RecurrenceNotFound,
    SingularSystem,
    TOperatorSpec,
    distinguish,
    fingerprint,
    local_nilpotency_probe,
    module_axiom_check,
    prony_general,
    prony_recover,
    t_operator_apply,
    vandermonde_extract,
)
from hvtensor.exact import NonRationalRootsRemain, Scalar
from hvtensor.linalg import SparseVector
from hvtensor.modules import (
    HighestWeightData,
    IndModule,
    MVModule,
    OmegaModule,
    OmegaParams,
    intermediate_module,
    random_hbar,
)
from hvtensor.suites import PIPELINE_PARAMS, random_tensor_params
from hvtensor.tensor import TensorModule, TensorParams, tensor_iso_check

bases = st.sampled_from([Fraction(x) for x in (1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-2, 3))])


class TestVandermonde:
    @given(st.lists(st.tuples(bases, st.integers(0, 2)), min_size=1, max_size=3, unique_by=lambda t: t[0]),
           st.integers(-4, 4), st.integers(0, 10**6))
    def test_planted_components(self, comps, start, seed):
        rng = random.Random(seed)
        spec = ExpSumSpec(tuple(comps))
        planted = {u: random_scalar(rng) for u in spec.unknowns()}
        samples = []
        for m in range(start, start + len(planted) + 2):
            samples.append((m, sum((c * planted[u] for c, u in zip(spec.row(m), spec.unknowns())), Scalar(0))))
        assert vandermonde_extract(samples, spec) == planted

    def test_sparse_vector_samples(self):
        spec = ExpSumSpec(((2, 1), (3, 0)))
        x = {(0, 0): SparseVector({"a": Scalar(1)}), (0, 1): SparseVector({"b": Scalar(2)}),
             (1, 0): SparseVector({"a": Scalar(-1), "c": Scalar(5)})}
        samples = [(m, sum((x[u] * c for c, u in zip(spec.row(m), spec.unknowns())), SparseVector()))
                   for m in range(1, 5)]
        assert vandermonde_extract(samples, spec) == x

    def test_duplicate_bases_are_singular(self):
        with pytest.raises(SingularSystem):
            ExpSumSpec(((2, 0), (2, 1)))

    def test_inconsistent_extra_sample(self):
        spec = ExpSumSpec(((2, 0),))
        with pytest.raises(SingularSystem):
            vandermonde_extract([(0, 1), (1, 2), (2, 5)], spec)


class TestProny:
    def test_two_term_example(self):
        samples = [8, 1, 17, 19]  # 3 * 2^k + 5 * (-1)^k
        assert prony_recover(samples, 2) == [(Scalar(-1), Scalar(5)), (Scalar(2), Scalar(3))]

    @given(st.lists(bases, min_size=1, max_size=4, unique=True), st.integers(0, 10**6))
    def test_planted_terms(self, lams, seed):
        rng = random.Random(seed)
        weights = [random_scalar(rng) or Scalar(1) for _ in lams]
        samples = [sum((w * Scalar(lam) ** k for lam, w in zip(lams, weights)), Scalar(0)) for k in range(8)]
        want = sorted(((Scalar(lam), w) for lam, w in zip(lams, weights)), key=lambda t: t[0].sort_key())
        assert prony_recover(samples, 4) == want

    def test_polynomial_weights(self):
        # s_k = (1 + 2k) 3^k
        samples = [(1 + 2 * k) * 3 ** k for k in range(6)]
        assert prony_general(samples, 3) == {Scalar(3): [Scalar(1), Scalar(2)]}
        with pytest.raises(RecurrenceNotFound):
            prony_recover(samples, 3)

    def test_golden_ratio(self):
        with pytest.raises(NonRationalRootsRemain):
            prony_recover([1, 1, 2, 3], 2)


class TestFingerprint:
    @given(st.integers(0, 10**6))
    def test_round_trip(self, seed):
        tp = random_tensor_params(random.Random(seed))
        assert tensor_iso_check(fingerprint(tp).to_params(), tp)

    def test_permutations_have_equal_fingerprints(self):
        tp = random_tensor_params(random.Random(11), 3)
        for perm in itertools.permutations(tp.factors):
            assert fingerprint(TensorParams(perm, tp.hw)).to_json() == fingerprint(tp).to_json()


class TestTOperator:
    def test_terms(self):
        assert TOperatorSpec(-12, -5, 1).terms() == [(-1, -7, -5), (1, -8, -4)]

    @given(st.integers(1, 4), st.integers(-6, 6), st.integers(-6, 6), st.integers(-3, 3))
    def test_trivial_on_intermediate(self, s, l, m, n):
        M = intermediate_module(Fraction(1, 2), 3, 2)
        assert not t_operator_apply(TOperatorSpec(l, m, s), M, M.parse_vector(f"t^{n}"))

    def test_nontrivial_on_tensor_ground_vector(self):
        M = TensorModule(PIPELINE_PARAMS)
        g = M.ground(M.ind.hw_vector())
        assert t_operator_apply(TOperatorSpec(-12, -5, 1), M, g)

    @pytest.mark.parametrize("dim, r, d", [(1, 0, 0), (2, 1, 1), (3, 2, 0), (3, 2, 1)])
    def test_trivial_past_threshold_on_mv(self, dim, r, d):
        rng = random.Random(dim + 7 * r + 3 * d)
        V = random_hbar(rng, dim, r, d)
        M = MVModule(V, OmegaParams(2, 1, 3))
        s = V.t_threshold() + 1
        v = M.random_vector(rng)
        for l, m in itertools.product(range(-6, 7), range(-6, 7, 2)):  # noqa: E741
            assert not t_operator_apply(TOperatorSpec(l, m, max(s, 1)), M, v)


class TestNilpotency:
    def test_ind_is_locally_nilpotent(self):
        M = IndModule(HighestWeightData(1, 1, 0, 0))
        v = M.parse_vector("[L(-2) I(-1) | v]")
        assert str(local_nilpotency_probe(M, L(6), v)) == "NilpotentAfter(1)"

    def test_omega_is_not(self):
        M = OmegaModule(OmegaParams(2, 1, 1))
        assert str(local_nilpotency_probe(M, L(6), M.parse_vector("1"))) == "NotNilpotentWithin(20)"


class TestDistinguish:
    tensor = TensorModule(PIPELINE_PARAMS)

    @pytest.mark.parametrize("other, tag", [
        (IndModule(HighestWeightData(1, 1, 0, 0)), "Ind"),
        (intermediate_module(Fraction(1, 2), 3, 2), "AFamily"),
        (MVModule(random_hbar(random.Random(2), 2, 1, 0), OmegaParams(2, 1, 3)), "MV"),
    ])
    def test_tensor_is_separated(self, other, tag):
        v = distinguish((self.tensor, "TensorProduct"), (other, tag))
        assert v.verdict == "Distinguished"
        assert v.report.status == "pass"

    def test_same_module_is_inconclusive(self):
        A = intermediate_module(Fraction(1, 2), 3, 2)
        v = distinguish((A, "AFamily"), (A, "AFamily"))
        assert v.verdict == "Inconclusive"
        assert v.report.status == "inconclusive"


def test_axiom_check_catches_a_wrong_action():
    """Flip the sign of alpha in L_k only for k > 0: the module relation breaks and is reported."""

    class Broken(OmegaModule):
        def _act_basis(self, gen, n):
            if gen.kind == "L" and gen.index > 0:
                p = self.params
                return OmegaModule(OmegaParams(p.lam, -p.alpha, p.beta))._act_basis(gen, n)
            return super()._act_basis(gen, n)

    r = module_axiom_check(Broken(OmegaParams(2, 3, 1)), window=3, trials=50, seed=0)
    assert r.status == "fail"
    assert r.counterexample and {"x", "y", "v", "lhs", "rhs"} <= set(r.counterexample)
