"""Seeded verification suites, one per checked property family.

Every function returns a ``Report`` and draws all randomness from
``random.Random(seed)``, so equal arguments give identical reports.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import replace
from fractions import Fraction

from .algebra import I, L, centrality_check, jacobi_check, random_scalar
from .analysis import (
    ExpSumSpec,
    TOperatorSpec,
    distinguish,
    fingerprint,
    local_nilpotency_probe,
    module_axiom_check,
    prony_recover,
    t_operator_apply,
    vandermonde_extract,
)
from .exact import ONE, ZERO, NonRationalRootsRemain, Scalar
from .linalg import SparseVector
from .modules import (
    HighestWeightData,
    IndModule,
    MVModule,
    OmegaModule,
    OmegaParams,
    degree2_module,
    degreen_module,
    intermediate_module,
    random_hbar,
)
from .modules.induced import ind_depth, pbw_monomials
from .modules.kfamilies import degree2_display_formula, degreen_display_formula, intermediate_closed_form
from .report import Check, Report
from .tensor import (
    TensorModule,
    TensorParams,
    descend_to_ground,
    cyclic_generation_check,
    deg,
    submodule_chain_verify,
    tensor_iso_check,
)

# The tensor instance used for the irreducibility pipeline and the T-operator test.
PIPELINE_PARAMS = TensorParams(
    (OmegaParams(1, 3, 0), OmegaParams(2, 0, 5)),
    HighestWeightData(1, 1, 0, 0),
)

_LAMBDAS = [Fraction(x) for x in (1, -1, 2, -2, 3, -3)] + [Fraction(1, 2), Fraction(-1, 2), Fraction(2, 3), Fraction(3, 2)]


def _rq(rng: random.Random, bound: int = 5) -> Scalar:
    return random_scalar(rng, complex_rate=0.0, bound=bound)


def _nonzero(rng: random.Random, complex_rate: float = 0.25) -> Scalar:
    while True:
        x = random_scalar(rng, complex_rate=complex_rate)
        if x:
            return x


# -- 1. Lie algebra -----------------------------------------------------------


def lie_suite(window: int = 8, trials: int = 50, seed: int = 0) -> Report:
    return Report.merge([jacobi_check(window, trials, seed), centrality_check(window)], seed=seed)


# -- 2. module axioms ---------------------------------------------------------


def axiom_families(rng: random.Random) -> list:
    """``(label, module, sampler)`` for one random instance of every family."""
    out = []
    om = OmegaModule(OmegaParams(_nonzero(rng), random_scalar(rng), random_scalar(rng)))
    out.append(("omega", om, om.random_vector))
    im = intermediate_module(random_scalar(rng), random_scalar(rng), random_scalar(rng))
    out.append(("intermediate", im, im.random_vector))
    f = {e: _nonzero(rng) for e in rng.sample(range(-2, 3), 2)}
    d2 = degree2_module(f, random_scalar(rng), random_scalar(rng))
    out.append(("degree2", d2, d2.random_vector))
    for n in (1, 2, 3):
        dn = degreen_module(n, random_scalar(rng), random_scalar(rng))
        out.append((f"degree-n(n={n})", dn, dn.random_vector))
    hw = HighestWeightData(random_scalar(rng), random_scalar(rng), random_scalar(rng), random_scalar(rng))
    ind = IndModule(hw)
    out.append(("ind", ind, lambda r, m=ind: m.random_vector(r, max_depth=4)))
    for dim, d in ((1, 0), (2, 1), (3, rng.randint(0, 1))):
        r = rng.randint(0, 2)
        V = random_hbar(rng, dim, r, d)
        mv = MVModule(V, OmegaParams(_nonzero(rng, 0.0), _rq(rng), _rq(rng)))
        out.append((f"mv(dim={dim},r={r},d={d})", mv, mv.random_vector))
    return out


class _Sampled:
    """Module view whose ``random_vector`` is a custom sampler."""

    def __init__(self, module, sampler):
        self._m = module
        self._sampler = sampler

    def __getattr__(self, name):
        return getattr(self._m, name)

    def random_vector(self, rng):
        return self._sampler(rng)

    def sample_vectors(self, rng, count=4):
        return [self._sampler(rng) for _ in range(count)]


def axiom_suite(seed: int = 0, trials: int = 200, window: int = 5, tensor_trials: int = 60) -> Report:
    rng = random.Random(seed)
    reports, labels = [], []
    for label, module, sampler in axiom_families(rng):
        reports.append(module_axiom_check(_Sampled(module, sampler), window, trials, rng.randrange(2**32)))
        labels.append(label)
    tm = TensorModule(PIPELINE_PARAMS)
    reports.append(module_axiom_check(tm, 4, tensor_trials, rng.randrange(2**32)))
    labels.append("tensor")
    return Report.merge(reports, seed=seed, prefix=labels)


# -- 3. closed forms ----------------------------------------------------------


def closed_form_suite(seed: int = 0, bound: int = 6) -> Report:
    """Derived intermediate-series action vs the closed form, plus the display discrepancies."""
    rng = random.Random(seed)
    gamma, alpha, beta = random_scalar(rng), random_scalar(rng), random_scalar(rng)
    im = intermediate_module(gamma, alpha, beta)
    bad = []
    for m in range(-bound, bound + 1):
        for n in range(-bound, bound + 1):
            for g in (L(m), I(m)):
                if im.act_on_key(g, n) != intermediate_closed_form(gamma, alpha, beta, g, n):
                    bad.append({"gen": str(g), "n": n})
    checks = [Check("intermediate/closed-form", {"gamma": gamma, "alpha": alpha, "beta": beta, "bound": bound},
                    "(gamma+n+m alpha) t^(m+n) and beta t^(m+n)", f"{len(bad)} mismatches", not bad)]

    # Degree-2: the derived action L_m(t^n d) = t^(m+n)(f + (n + m alpha) d) differs from the display.
    f = {1: ONE}
    a2 = Scalar(2)
    d2 = degree2_module(f, a2, 0)
    diffs, derived_ok = [], True
    for m in range(-3, 4):
        for n in range(-3, 4):
            derived = d2.act_on_key(L(m), (n, 1))
            expected = {}
            for e, c in f.items():
                expected[(m + n + e, 0)] = c
            coeff = Scalar(n) + a2 * m
            if coeff:
                expected[(m + n, 1)] = coeff
            if derived != expected:
                derived_ok = False
            if derived != degree2_display_formula(f, a2, L(m), (n, 1)):
                diffs.append((m, n))
    sample = d2.format_vector(SparseVector._wrap(d2.act_on_key(L(1), (0, 1))))
    shown = d2.format_vector(SparseVector._wrap(degree2_display_formula(f, a2, L(1), (0, 1))))
    checks.append(Check("degree2/derived-action", {"f": "t", "alpha": a2},
                        "L_m(t^n d) = t^(m+n)(f(t) + (n + m alpha) d)", "agrees" if derived_ok else "mismatch",
                        derived_ok))
    checks.append(Check("degree2/display-discrepancy", {"f": "t", "alpha": a2, "range": "|m|,|n| <= 3"},
                        "display formula t^(m+n)(f(t) + m alpha + n d) reported, not used",
                        {"disagreeing (m,n)": len(diffs), "example": {"L[1].d derived": sample,
                                                                       "L[1].d display": shown}},
                        True))
    dn = degreen_module(2, a2, 0)
    ndiff = sum(1 for k in range(-3, 4) for r in range(-3, 4) for mm in range(2)
                if dn.act_on_key(L(k), (r, mm)) != degreen_display_formula(2, a2, L(k), (r, mm)))
    checks.append(Check("degree-n/display-discrepancy", {"n": 2, "alpha": a2},
                        "display formula (r t^(k+r) + alpha k t^(k+r+1)) reported, not used",
                        {"disagreeing (k,r,m)": ndiff,
                         "L[1].t derived": dn.format_vector(SparseVector._wrap(dn.act_on_key(L(1), (1, 0)))),
                         "L[1].t display": dn.format_vector(SparseVector._wrap(degreen_display_formula(2, a2, L(1), (1, 0))))},
                        True))
    return Report.from_checks(checks, counterexample=bad[0] if bad else None, seed=seed)


# -- 4. filtration ------------------------------------------------------------


def chain_suite(s_max: int = 3, n_max: int = 4, k_window: int = 4) -> Report:
    r1 = submodule_chain_verify(1, Fraction(1, 2), 2, Fraction(1, 3), 0, s_max, n_max, k_window, "negated")
    r2 = submodule_chain_verify(1, Fraction(1, 2), 2, Fraction(1, 3), 0, s_max, n_max, k_window, "canonical")
    return Report.merge([r1, r2], prefix=["negated", "canonical"])


# -- 5. irreducibility pipeline -----------------------------------------------


def pipeline_suite(seed: int = 0, instances: int = 20, cutoffs=(2, 2)) -> Report:
    rng = random.Random(seed)
    tp = PIPELINE_PARAMS
    M = TensorModule(tp)
    checks, counter = [], None
    for n in range(instances):
        u = M.random_vector(rng, max_exp=2, max_depth=3)
        trace: list = []
        ground = descend_to_ground(tp, u, M, trace)
        ok_ground = bool(ground) and not any(deg(ground))
        w = SparseVector._wrap({mono: c for (_, mono), c in ground._terms.items()})
        gen = cyclic_generation_check(tp, w, cutoffs[0], cutoffs[1], module=M)
        verdict = gen.checks[0].actual["verdict"]
        ok = ok_ground and verdict == "FULL"
        checks.append(Check(f"pipeline/{n}", {"u": M.format_vector(u)}, "nonzero ground vector, FULL generation",
                            {"reductions": len(trace), "ground": M.format_vector(ground), "generation": verdict},
                            ok if ok or not ok_ground else None))
        if not ok and counter is None:
            counter = {"u": M.format_vector(u), "generation": gen.checks[0].actual}
    return Report.from_checks(checks, counterexample=counter, seed=seed)


# -- 6. fingerprint round trip ------------------------------------------------


def random_tensor_params(rng: random.Random, max_factors: int = 3) -> TensorParams:
    m = rng.randint(1, max_factors)
    lams = rng.sample(_LAMBDAS, m)
    factors = []
    for lam in lams:
        kind = rng.random()
        alpha = _rq(rng) if kind < 0.75 else ZERO
        beta = _rq(rng) if kind > 0.35 else ZERO
        while not alpha and not beta:
            alpha = _rq(rng)
        factors.append(OmegaParams(lam, alpha, beta))
    hw = HighestWeightData(_rq(rng), _rq(rng), _rq(rng), _rq(rng))
    return TensorParams(tuple(factors), hw)


def _perturbations(tp: TensorParams):
    """Every single-parameter change that keeps the parameters valid."""
    for i, f in enumerate(tp.factors):
        for field_name in ("lam", "alpha", "beta"):
            for step in (1, 2, 3, 5):
                new = replace_factor(f, field_name, getattr(f, field_name) + step)
                factors = tp.factors[:i] + (new,) + tp.factors[i + 1:] if new else None
                try:
                    cand = TensorParams(factors, tp.hw) if factors else None
                except ValueError:
                    cand = None
                if cand is not None:
                    yield f"factor{i + 1}.{field_name}", cand
                    break
    for field_name in ("h", "c0", "c1", "c2"):
        hw = replace(tp.hw, **{field_name: getattr(tp.hw, field_name) + 1})
        yield f"hw.{field_name}", TensorParams(tp.factors, hw)


def replace_factor(f: OmegaParams, field_name: str, value):
    try:
        return replace(f, **{field_name: value})
    except ValueError:
        return None


def fingerprint_suite(seed: int = 0, instances: int = 50, max_factors: int = 3) -> Report:
    rng = random.Random(seed)
    checks, counter = [], None
    for n in range(instances):
        tp = random_tensor_params(rng, max_factors)
        fp = fingerprint(tp)
        recovered = fp.to_params()
        iso = tensor_iso_check(recovered, tp)
        perms_ok = all(tensor_iso_check(TensorParams(perm, tp.hw), tp)
                       for perm in itertools.permutations(tp.factors))
        pert_bad = [name for name, cand in _perturbations(tp) if tensor_iso_check(cand, tp)]
        ok = iso and perms_ok and not pert_bad
        checks.append(Check(f"fingerprint/{n}", {"params": tp.to_json()},
                            "recovered invariants match; permutations equal; perturbations differ",
                            {"recovered": fp.to_json(), "iso": iso, "permutations": perms_ok,
                             "perturbations_equal": pert_bad}, ok))
        if not ok and counter is None:
            counter = {"params": tp.to_json(), "recovered": fp.to_json()}
    return Report.from_checks(checks, counterexample=counter, seed=seed)


# -- 7. T-operators and separations -------------------------------------------


def t_operator_suite(seed: int = 0, mv_instances: int = 12) -> Report:
    rng = random.Random(seed)
    checks = []

    # Trivial on A-family instances.
    bad, total = [], 0
    for _ in range(3):
        im = intermediate_module(random_scalar(rng), random_scalar(rng), _nonzero(rng))
        vecs = [im.random_vector(rng) for _ in range(2)]
        for s in range(1, 5):
            for l in range(-6, 7):  # noqa: E741
                for m in range(-6, 7):
                    for v in vecs:
                        total += 1
                        if t_operator_apply(TOperatorSpec(l, m, s), im, v):
                            bad.append({"l": l, "m": m, "s": s, "v": im.format_vector(v)})
    checks.append(Check("t-operator/intermediate-trivial", {"s": "1..4", "|l|,|m|": 6, "applications": total},
                        "0", f"{len(bad)} nonzero", not bad))

    # Nontrivial on the tensor ground vector.
    tm = TensorModule(PIPELINE_PARAMS)
    g = tm.ground(tm.ind.hw_vector())
    out = t_operator_apply(TOperatorSpec(-12, -5, 1), tm, g)
    checks.append(Check("t-operator/tensor-nontrivial", {"l": -12, "m": -5, "s": 1, "v": tm.format_vector(g)},
                        "nonzero", f"{len(out)} terms", bool(out)))

    # Trivial on M(V, Omega) past the threshold 2(r' + d).
    mbad, mtotal = [], 0
    for _ in range(mv_instances):
        dim, r, d = rng.randint(1, 3), rng.randint(0, 2), rng.randint(0, 1)
        V = random_hbar(rng, dim, r, d)
        mv = MVModule(V, OmegaParams(_nonzero(rng, 0.0), _rq(rng), _nonzero(rng, 0.0)))
        thr = V.t_threshold()
        vecs = [mv.random_vector(rng) for _ in range(2)]
        for s in range(max(1, thr + 1), thr + 3):
            for l in range(-6, 7):  # noqa: E741
                for m in range(-6, 7, 3):
                    for v in vecs:
                        mtotal += 1
                        if t_operator_apply(TOperatorSpec(l, m, s), mv, v):
                            mbad.append({"V": V.to_json(), "l": l, "m": m, "s": s})
    checks.append(Check("t-operator/mv-trivial-past-threshold",
                        {"instances": mv_instances, "applications": mtotal}, "0", f"{len(mbad)} nonzero", not mbad))

    # Local nilpotency: Ind vs tensor ground vectors.
    ind = tm.ind
    nbad = []
    for mono in pbw_monomials(3):
        v = SparseVector.basis(mono)
        K = ind_depth(v)
        for k in range(K, K + 3):
            for gen in (L(k), I(k)):
                res = local_nilpotency_probe(ind, gen, v)
                if not (res.nilpotent and res.steps <= 1):
                    nbad.append({"v": str(mono), "gen": str(gen), "result": str(res)})
    checks.append(Check("nilpotency/ind", {"depth": 3}, "NilpotentAfter(<=1) for k >= ind_depth",
                        f"{len(nbad)} failures", not nbad))
    tres = [str(local_nilpotency_probe(tm, L(k), g)) for k in (6, 7, 8)]
    checks.append(Check("nilpotency/tensor-ground", {"v": tm.format_vector(g)}, "NotNilpotentWithin(20)",
                        tres, all(r == "NotNilpotentWithin(20)" for r in tres)))

    # Each separation pairing.
    im = intermediate_module(Fraction(1, 2), 3, 2)
    V = random_hbar(rng, 2, 1, 0)
    mv = MVModule(V, OmegaParams(2, 1, 3))
    for label, other in (("Ind", ind), ("AFamily", im), ("MV", mv)):
        verdict = distinguish((tm, "TensorProduct"), (other, label), seed=seed)
        checks.append(Check(f"distinguish/TensorProduct-vs-{label}", {"B": other.describe()},
                            "Distinguished", {"verdict": verdict.verdict,
                                              "tests": [e["test"] for e in verdict.evidence]},
                            verdict.verdict == "Distinguished"))
    return Report.from_checks(checks, counterexample=(bad or mbad or nbad or [None])[0], seed=seed)


# -- 8. extraction and Prony oracles ------------------------------------------


def extraction_suite(seed: int = 0, trials: int = 40) -> Report:
    rng = random.Random(seed)
    vbad = []
    for _ in range(trials):
        ncomp = rng.randint(1, 3)
        mus = rng.sample(_LAMBDAS, ncomp)
        spec = ExpSumSpec(tuple((mu, rng.randint(0, 2)) for mu in mus))
        planted = {u: tuple(random_scalar(rng) for _ in range(3)) for u in spec.unknowns()}
        n = len(planted)
        start = rng.randint(-3, 3)
        samples = []
        for m in range(start, start + n + 2):
            row = spec.row(m)
            vec = tuple(sum((c * planted[u][t] for c, u in zip(row, spec.unknowns())), ZERO) for t in range(3))
            samples.append((m, vec))
        got = vandermonde_extract(samples, spec)
        if got != planted:
            vbad.append({"spec": [[str(mu), d] for mu, d in spec.components]})
    checks = [Check("vandermonde/planted", {"trials": trials, "components": "<= 3", "maxdeg": "<= 2"},
                    "exact recovery", f"{len(vbad)} failures", not vbad)]

    pbad = []
    for _ in range(trials):
        nterm = rng.randint(1, 4)
        lams = rng.sample(_LAMBDAS, nterm)
        weights = [_nonzero(rng) for _ in lams]
        samples = [sum((w * Scalar(lam) ** k for lam, w in zip(lams, weights)), ZERO) for k in range(8)]
        got = prony_recover(samples, 4)
        want = sorted(((Scalar(lam), w) for lam, w in zip(lams, weights)), key=lambda t: t[0].sort_key())
        if got != want:
            pbad.append({"lams": [str(x) for x in lams]})
    checks.append(Check("prony/planted", {"trials": trials, "terms": "<= 4"}, "exact recovery",
                        f"{len(pbad)} failures", not pbad))

    try:
        prony_recover([1, 1, 2, 3], 2)
        golden = "recovered"
    except NonRationalRootsRemain:
        golden = "NonRationalRootsRemain"
    checks.append(Check("prony/golden-ratio", {"samples": [1, 1, 2, 3], "bound": 2}, "NonRationalRootsRemain",
                        golden, golden == "NonRationalRootsRemain"))
    return Report.from_checks(checks, counterexample=(vbad or pbad or [None])[0], seed=seed)


# -- 9. parser round trip -----------------------------------------------------


def roundtrip_families(rng: random.Random) -> list:
    fams = [(label, module) for label, module, _ in axiom_families(rng)]
    fams.append(("tensor", TensorModule(PIPELINE_PARAMS)))
    fams.append(("tensor(m=3)", TensorModule(random_tensor_params(random.Random(rng.randrange(2**32)), 3))))
    return fams


def roundtrip_suite(seed: int = 0, count: int = 1000) -> Report:
    from .parsing import parse_vector

    rng = random.Random(seed)
    checks, counter = [], None
    for label, module in roundtrip_families(rng):
        bad = 0
        for _ in range(count):
            v = module.random_vector(rng)
            text = module.format_vector(v)
            back = parse_vector(text, module)
            if back != v or module.format_vector(back) != text:
                bad += 1
                if counter is None:
                    counter = {"family": label, "text": text}
        checks.append(Check(f"roundtrip/{label}", {"count": count}, "parse(print(v)) = v", f"{bad} failures",
                            bad == 0))
    return Report.from_checks(checks, counterexample=counter, seed=seed)


SUITES = {
    "lie": lambda seed: lie_suite(seed=seed),
    "axioms": lambda seed: axiom_suite(seed=seed),
    "closed-form": lambda seed: closed_form_suite(seed=seed),
    "submodule-chain": lambda seed: chain_suite(),
    "irreducibility": lambda seed: pipeline_suite(seed=seed),
    "fingerprint": lambda seed: fingerprint_suite(seed=seed),
    "t-operator": lambda seed: t_operator_suite(seed=seed),
    "extraction": lambda seed: extraction_suite(seed=seed),
    "roundtrip": lambda seed: roundtrip_suite(seed=seed),
}


def full_suite(seed: int = 0, only=None) -> Report:
    names = [n for n in SUITES if only is None or n in only]
    return Report.merge([SUITES[n](seed) for n in names], seed=seed, prefix=names)
