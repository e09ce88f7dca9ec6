"""Verification algorithms shared across module families.

* ``vandermonde_extract`` separates a sequence ``s(m) = sum_ij mu_i^m m^j x_ij``
  into its components by an exact generalized-Vandermonde solve.
* ``prony_recover`` finds the exponentials of a scalar exponential sum
  from samples alone (Hankel kernel + rational roots).
* ``fingerprint`` recovers the factor parameters of a tensor product
  module by probing it as a black box.
* ``t_operator_apply``, ``local_nilpotency_probe`` and ``distinguish``
  implement isomorphism-invariant tests that separate module classes.
* ``module_axiom_check`` checks ``x(yv) - y(xv) = [x,y]v`` on any module.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Any

from .algebra import CENTRAL, Generator, I, L, basis, bracket, random_scalar
from .exact import ONE, ZERO, Scalar, as_scalar, binomial, rational_roots
from .linalg import Matrix, SingularMatrix, SparseVector, add_into, linear_solve, rank
from .report import Check, Report


class SingularSystem(ArithmeticError):
    """The extraction system is singular or the samples do not fit the spec."""


class RecurrenceNotFound(ArithmeticError):
    pass


# -- generalized Vandermonde extraction ---------------------------------------


@dataclass(frozen=True)
class ExpSumSpec:
    """Components ``(mu_i, maxdeg_i)``: terms ``mu_i^m m^j`` for ``j <= maxdeg_i``."""

    components: tuple

    def __post_init__(self):
        comps = tuple((as_scalar(mu), int(d)) for mu, d in self.components)
        object.__setattr__(self, "components", comps)
        mus = [mu for mu, _ in comps]
        if any(not mu for mu in mus):
            raise ValueError("exponential bases must be nonzero")
        if len(set(mus)) != len(mus):
            raise SingularSystem("exponential bases must be pairwise distinct")
        if any(d < 0 for _, d in comps):
            raise ValueError("degree bounds must be nonnegative")

    def unknowns(self) -> list:
        return [(i, j) for i, (_, d) in enumerate(self.components) for j in range(d + 1)]

    def row(self, m: int) -> list:
        return [self.components[i][0] ** m * Scalar(m ** j) for i, j in self.unknowns()]


@lru_cache(maxsize=256)
def _vandermonde_inverse(spec: ExpSumSpec, ms: tuple) -> tuple:
    """Rows of the inverse of the square system at the sample points ``ms``."""
    n = len(ms)
    A = Matrix.from_rows([spec.row(m) for m in ms])
    units = [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
    try:
        rows = linear_solve(A, units)
    except SingularMatrix as exc:
        raise SingularSystem(str(exc)) from None
    # Right-hand-side entries are rows, so solving A X = Id yields the inverse row by row.
    return tuple(tuple(row) for row in rows)


def _combine(coeffs, values, tuple_vals: bool):
    if tuple_vals:
        acc = [ZERO] * len(values[0])
        for c, v in zip(coeffs, values):
            if c:
                for t, a in enumerate(v):
                    acc[t] = acc[t] + c * as_scalar(a)
        return tuple(acc)
    if not isinstance(values[0], SparseVector):
        acc = values[0] * ZERO
        for c, v in zip(coeffs, values):
            if c:
                acc = acc + v * c
        return acc
    acc: dict = {}
    for c, v in zip(coeffs, values):
        if c:
            for k, a in v._terms.items():
                add_into(acc, k, c * a)
    return type(values[0])._wrap(acc)


def vandermonde_extract(samples, spec: ExpSumSpec) -> dict:
    """Solve ``sum_ij mu_i^m m^j x_ij = s(m)`` for the ``x_ij``.

    ``samples`` is a list of ``(m, value)`` where values are scalars,
    tuples of scalars or sparse vectors. The first ``#unknowns`` samples
    determine the solution; any further samples are used as a check and a
    mismatch raises ``SingularSystem``.
    """
    unknowns = spec.unknowns()
    n = len(unknowns)
    samples = list(samples)
    if len(samples) < n:
        raise ValueError(f"need at least {n} samples, got {len(samples)}")
    ms = [m for m, _ in samples]
    if len(set(ms)) != len(ms):
        raise ValueError("sample points must be distinct")
    tuple_vals = isinstance(samples[0][1], (tuple, list))
    inv = _vandermonde_inverse(spec, tuple(ms[:n]))
    head = [v for _, v in samples[:n]]
    xs = [_combine(row, head, tuple_vals) for row in inv]
    for m, value in samples[n:]:
        got = _combine(spec.row(m), xs, tuple_vals)
        want = tuple(as_scalar(a) for a in value) if tuple_vals else value
        if got != want:
            raise SingularSystem(f"sample at m={m} does not fit the exponential-sum spec")
    return dict(zip(unknowns, xs))


# -- Prony recovery -----------------------------------------------------------


def _hankel(samples, rows: int, cols: int, shift: int = 0) -> Matrix:
    return Matrix.from_rows([[samples[i + j + shift] for j in range(cols)] for i in range(rows)])


def _real_fraction(z: Scalar) -> Fraction:
    if z.im:
        raise ArithmeticError("non-real recurrence coefficient")
    return z.re


def prony_general(samples, bound: int, start: int = 0) -> dict:
    """Recover ``s_k = sum_i P_i(k) lam_i^k`` from ``s_start, s_start+1, ...``.

    Returns ``{lam_i: [coefficients of P_i, lowest degree first]}``. The
    recurrence order is the rank of the ``bound x bound`` Hankel matrix;
    it must be confirmed by every sample, otherwise ``RecurrenceNotFound``.
    Characteristic roots must be rational (``NonRationalRootsRemain``).
    """
    from .exact import NonRationalRootsRemain

    s = [as_scalar(x) for x in samples]
    if len(s) < 2 * bound:
        raise ValueError(f"need at least {2 * bound} samples for bound {bound}")
    if not any(s):
        return {}
    d = rank(_hankel(s, bound, bound))
    if d == 0:
        raise RecurrenceNotFound("no recurrence of order <= bound fits the samples")
    H = _hankel(s, d, d)
    try:
        c = linear_solve(H, [-s[i + d] for i in range(d)])
    except SingularMatrix:
        raise RecurrenceNotFound("leading Hankel block is singular") from None
    for i in range(len(s) - d):
        if sum((c[j] * s[i + j] for j in range(d)), ZERO) + s[i + d]:
            raise RecurrenceNotFound(f"recurrence of order {d} fails at sample {start + i + d}")
    try:
        poly = [_real_fraction(x) for x in c] + [Fraction(1)]
    except ArithmeticError:
        raise NonRationalRootsRemain([], c) from None
    roots = rational_roots(poly, require_full=True)
    if any(r == 0 for r in roots):
        raise RecurrenceNotFound("zero characteristic root: samples are not an exponential sum")
    mult: dict = {}
    for r in roots:
        mult[r] = mult.get(r, 0) + 1
    lams = sorted(mult)
    spec = ExpSumSpec(tuple((lam, mult[lam] - 1) for lam in lams))
    comps = vandermonde_extract([(start + k, s[k]) for k in range(len(s))], spec)
    return {Scalar(lam): [comps[(i, j)] for j in range(mult[lam])] for i, lam in enumerate(lams)}


def prony_recover(samples, bound: int, start: int = 0) -> list:
    """Pairs ``(lam, weight)`` with ``s_k = sum weight * lam^k``, sorted by ``lam``."""
    out = []
    for lam, coeffs in prony_general(samples, bound, start).items():
        if any(coeffs[1:]):
            raise RecurrenceNotFound("samples carry polynomial weights, not a pure exponential sum")
        out.append((lam, coeffs[0]))
    return sorted(out, key=lambda t: t[0].sort_key())


# -- fingerprint --------------------------------------------------------------


@dataclass
class Fingerprint:
    factors: list  # (lam, alpha, beta)
    hw: dict
    samples: dict = field(default_factory=dict)

    def to_params(self):
        from .modules.induced import HighestWeightData
        from .modules.omega import OmegaParams
        from .tensor import TensorParams

        hw = HighestWeightData(self.hw["h"], self.hw["c0"], self.hw["c1"], self.hw["c2"])
        return TensorParams(tuple(OmegaParams(*f) for f in self.factors), hw)

    def to_json(self) -> dict:
        return {"factors": [{"lambda": str(a), "alpha": str(b), "beta": str(c)} for a, b, c in self.factors],
                "hw": {k: str(v) for k, v in self.hw.items()}}


def fingerprint(module, bound: int = 4) -> Fingerprint:
    """Recover ``(lam_i, alpha_i, beta_i)`` and the highest-weight data by probing.

    Only the action on the ground vector ``g = 1 (x) ... (x) 1 (x) v`` is
    used, and only its ``g``-coefficient is read:

    * ``I_k g`` has coefficient ``sum beta_i lam_i^k`` (k >= 1): Prony gives
      the ``(lam_i, beta_i)`` with ``beta_i != 0``;
    * ``L_k g`` has coefficient ``sum alpha_i k lam_i^k``: generalized Prony
      (double roots) gives the ``(lam_i, alpha_i)`` with ``alpha_i != 0``;
    * ``L_0``, ``I_0``, ``C_j`` give ``h``, ``c0 + sum beta_i`` and ``c_j``.

    ``bound`` must be at least the number of factors. Accepts a
    ``TensorModule`` or ``TensorParams``.
    """
    from .tensor import TensorModule, TensorParams

    if isinstance(module, TensorParams):
        module = TensorModule(module)
    g = module.ground(module.ind.hw_vector())
    (gkey,) = g.keys()
    K = 1
    i_samples = [module.act(I(k), g)[gkey] for k in range(K, K + 2 * bound)]
    l_samples = [module.act(L(k), g)[gkey] for k in range(K, K + 4 * bound)]
    betas = dict(prony_recover(i_samples, bound, start=K))
    alphas = {}
    for lam, coeffs in prony_general(l_samples, 2 * bound, start=K).items():
        if coeffs[0] or any(coeffs[2:]):
            raise RecurrenceNotFound("L-samples do not have the shape sum alpha k lam^k")
        alphas[lam] = coeffs[1] if len(coeffs) > 1 else ZERO
    lams = sorted(set(betas) | set(alphas), key=lambda z: z.sort_key())
    factors = [(lam, alphas.get(lam, ZERO), betas.get(lam, ZERO)) for lam in lams]
    beta_sum = sum((b for _, _, b in factors), ZERO)
    hw = {
        "h": module.act(L(0), g)[gkey],
        "c0": module.act(I(0), g)[gkey] - beta_sum,
        "c1": module.act(CENTRAL[0], g)[gkey],
        "c2": module.act(CENTRAL[1], g)[gkey],
    }
    return Fingerprint(factors, hw, {"I": i_samples, "L": l_samples, "first_k": K})


# -- T-operators and nilpotency -----------------------------------------------


@dataclass(frozen=True)
class TOperatorSpec:
    l: int  # noqa: E741
    m: int
    s: int

    def terms(self) -> list:
        """``[(coeff, a, b)]`` meaning ``coeff * I_a I_b``."""
        s, l, m = self.s, self.l, self.m
        return [(Fraction((-1) ** (s - i)) * binomial(s, i), l - m - i, m + i) for i in range(s + 1)]


def t_operator_apply(spec: TOperatorSpec, module, v):
    """``sum_i (-1)^(s-i) binom(s, i) I_{l-m-i} I_{m+i} v``."""
    acc: dict = {}
    for c, a, b in spec.terms():
        w = module.act(I(a), module.act(I(b), v))
        for k, x in w._terms.items():
            add_into(acc, k, x * c)
    return module.vector_cls._wrap(acc)


@dataclass(frozen=True)
class Nilpotency:
    nilpotent: bool
    steps: int  # first n with gen^n v = 0, or the iteration cap

    def __str__(self):
        return f"NilpotentAfter({self.steps})" if self.nilpotent else f"NotNilpotentWithin({self.steps})"


def local_nilpotency_probe(module, gen: Generator, v, max_iter: int = 20) -> Nilpotency:
    """Apply ``gen`` repeatedly; report the first power that kills ``v``."""
    if gen.kind == "C":
        raise ValueError("probe L_m or I_m, not a central element")
    for n in range(max_iter + 1):
        if not v:
            return Nilpotency(True, n)
        if n < max_iter:
            v = module.act(gen, v)
    return Nilpotency(False, max_iter)


# -- module axioms ------------------------------------------------------------


def module_axiom_check(module, window: int = 5, trials: int = 200, seed: int = 0, pairs=None,
                       vectors_per_pair: int = 1) -> Report:
    """Random ``x, y`` with ``|mode| <= window`` and random ``v``: ``x(yv) - y(xv) = [x,y] v``.

    Also checks that the module's declared scalar generators (the central
    elements and usually ``I_0``) act by their declared values.
    """
    rng = random.Random(seed)
    gens = basis(window)
    fails = []
    count = 0
    todo = list(pairs or [])
    while len(todo) < trials:
        todo.append((rng.choice(gens), rng.choice(gens)))
    for x, y in todo:
        for _ in range(vectors_per_pair):
            v = module.random_vector(rng)
            count += 1
            lhs = module.act(x, module.act(y, v)) - module.act(y, module.act(x, v))
            rhs = module.act_element(bracket(x, y), v)
            if lhs != rhs:
                fails.append({"x": str(x), "y": str(y), "v": module.format_vector(v),
                              "lhs": module.format_vector(lhs), "rhs": module.format_vector(rhs)})
    checks = [Check("module-axiom", {"family": module.family, "window": window, "trials": count, "seed": seed},
                    "x(yv) - y(xv) = [x,y]v", f"{len(fails)} failures", not fails)]
    sfails = []
    vecs = module.sample_vectors(rng, 4)
    for g, c in module.declared_scalars().items():
        for v in vecs:
            if module.act(g, v) != v * c:
                sfails.append({"gen": str(g), "declared": str(c), "v": module.format_vector(v)})
    checks.append(Check("declared-scalars", {"generators": [str(g) for g in module.declared_scalars()]},
                        "declared scalar action", f"{len(sfails)} failures", not sfails))
    counter = fails[0] if fails else (sfails[0] if sfails else None)
    return Report.from_checks(checks, counterexample=counter, seed=seed)


# -- distinguishing tests -----------------------------------------------------

CLASS_TAGS = ("TensorProduct", "Ind", "MV", "AFamily")


def _probe_vectors(module, tag: str, rng: random.Random, count: int = 3) -> list:
    vecs = []
    if tag == "TensorProduct":
        vecs.append(module.ground(module.ind.hw_vector()))
    elif tag == "Ind":
        vecs.append(module.hw_vector())
    vecs += [module.random_vector(rng) for _ in range(count)]
    return vecs


def _t_params(tags_modules) -> TOperatorSpec:
    """T^(1)_{-12,-5}, or the order past the MV threshold with all modes negative."""
    thr = None
    for module, tag in tags_modules:
        if tag == "MV":
            t = module.V.t_threshold()
            thr = t if thr is None else max(thr, t)
    if thr is None:
        return TOperatorSpec(-12, -5, 1)
    s = max(1, thr + 1)
    m = -(s + 2)
    return TOperatorSpec(2 * m - s - 3, m, s)


@dataclass
class Verdict:
    verdict: str  # "Distinguished" or "Inconclusive"
    evidence: list
    report: Report

    def __str__(self):
        return self.verdict


def distinguish(a, b, seed: int = 0, mode: int = 6, max_iter: int = 20) -> Verdict:
    """Compare two ``(module, tag)`` pairs with isomorphism-invariant tests.

    (a) local nilpotency of ``L_mode`` and ``I_mode`` on sampled vectors;
    (b) whether ``T^(1)_{-12,-5}`` kills the sampled vectors;
    (c) with an MV side, whether ``T^(s)`` kills them for ``s`` past
        ``2(r' + d)`` (every mode involved is negative).
    A test separates the modules when the observed property differs.
    Isomorphism is never claimed.
    """
    rng = random.Random(seed)
    sides = []
    for module, tag in (a, b):
        if tag not in CLASS_TAGS:
            raise ValueError(f"class tag must be one of {CLASS_TAGS}")
        sides.append((module, tag, _probe_vectors(module, tag, rng)))

    tests = []

    def nil_prop(module, vecs, gen):
        results = [local_nilpotency_probe(module, gen, v, max_iter) for v in vecs]
        return all(r.nilpotent for r in results), [str(r) for r in results]

    for gen in (L(mode), I(mode)):
        props = [nil_prop(mod, vecs, gen) for mod, _, vecs in sides]
        tests.append((f"nilpotency/{gen}", f"{gen} locally nilpotent on samples", props))

    t1 = TOperatorSpec(-12, -5, 1)
    specs = [t1]
    ts = _t_params([(m, t) for m, t, _ in sides])
    if ts != t1:
        specs.append(ts)
    for spec in specs:
        props = []
        for mod, _, vecs in sides:
            outs = [t_operator_apply(spec, mod, v) for v in vecs]
            props.append((all(not o for o in outs), ["0" if not o else "nonzero" for o in outs]))
        tests.append((f"t-operator/s={spec.s},l={spec.l},m={spec.m}", "T-operator acts trivially on samples", props))

    evidence = []
    for name, prop, ((pa, da), (pb, db)) in tests:
        if pa != pb:
            evidence.append({"test": name, "property": prop, "A": {"class": sides[0][1], "holds": pa, "detail": da},
                             "B": {"class": sides[1][1], "holds": pb, "detail": db}})
    found = bool(evidence)
    checks = []
    for name, prop, ((pa, da), (pb, db)) in tests:
        separates = pa != pb
        checks.append(Check(f"distinguish/{name}", {"A": sides[0][1], "B": sides[1][1], "property": prop},
                            "property evaluated on both sides", {"A": pa, "B": pb, "separates": separates}, True))
    # Only the verdict carries the outcome: no separating test is inconclusive, not a failure.
    checks.append(Check("distinguish/verdict", {"A": sides[0][1], "B": sides[1][1]}, "Distinguished",
                        "Distinguished" if found else "Inconclusive", True if found else None))
    report = Report.from_checks(checks, counterexample=evidence[0] if evidence else None, seed=seed)
    return Verdict("Distinguished" if found else "Inconclusive", evidence, report)
