"""Modules over K = C[t, t^-1, d] (d = t d/dt) and their lift to H-modules.

A K-module A becomes an H-module ``A_{alpha,beta}`` through

    L_m v = (t^m d + m alpha t^m) v,   I_m v = beta t^m v,   C_j v = 0.

Four K-module families are provided: Omega(lambda) = C[d], the
intermediate series C[t, t^-1] with d t^n = (gamma + n) t^n, the
degree-two module for mu = d^2 - f(t), and the degree-n module for
mu = (d/dt)^n - t. The H-actions are always obtained by composing the
K-actions, never by transcribing closed forms.
"""

from __future__ import annotations

import random

from ..algebra import CENTRAL, Generator, I
from ..exact import ONE, ZERO, Scalar, as_scalar, shifted_power
from ..linalg import SparseVector, add_into
from .base import Module, check_powers, random_terms


class KModule:
    """Basis-level ``t^m`` and ``d`` actions of one K-module."""

    name = "k-module"

    def t_pow(self, m: int, key) -> dict:
        raise NotImplementedError

    def delta(self, key) -> dict:
        raise NotImplementedError

    def apply_t_pow(self, m: int, v: SparseVector) -> SparseVector:
        return _lift(v, lambda key: self.t_pow(m, key))

    def apply_delta(self, v: SparseVector) -> SparseVector:
        return _lift(v, self.delta)


def _lift(v, basis_map):
    acc: dict = {}
    for key, c in v._terms.items():
        for k, a in basis_map(key).items():
            add_into(acc, k, c * a)
    return type(v)._wrap(acc)


class OmegaK(KModule):
    """Omega(lambda): ``t^m d^n = lambda^m (d - m)^n``, ``d d^n = d^(n+1)``."""

    name = "omega"

    def __init__(self, lam):
        self.lam = as_scalar(lam)
        if not self.lam:
            raise ValueError("lambda must be nonzero")

    def t_pow(self, m, n):
        lm = self.lam ** m
        return {j: lm * c for j, c in shifted_power(-m, n).items()}

    def delta(self, n):
        return {n + 1: ONE}


class IntermediateK(KModule):
    """C[t, t^-1] with ``d t^n = (gamma + n) t^n`` for a constant gamma."""

    name = "intermediate"

    def __init__(self, gamma):
        self.gamma = as_scalar(gamma)

    def t_pow(self, m, n):
        return {n + m: ONE}

    def delta(self, n):
        c = self.gamma + n
        return {n: c} if c else {}


class Degree2K(KModule):
    """Basis ``t^n`` (key ``(n, 0)``) and ``t^n d`` (key ``(n, 1)``); ``d^2 = f(t)``."""

    name = "degree2"

    def __init__(self, f: dict):
        self.f = {int(e): as_scalar(c) for e, c in f.items() if as_scalar(c)}

    def t_pow(self, m, key):
        n, j = key
        return {(n + m, j): ONE}

    def delta(self, key):
        n, j = key
        if j == 0:
            out = {(n, 1): ONE}
            if n:
                out[(n, 0)] = Scalar(n)
            return out
        out = {(n + e, 0): c for e, c in self.f.items()}
        if n:
            out[(n, 1)] = Scalar(n)
        return out


class DegreeNK(KModule):
    """Basis ``t^r (d/dt)^m``, key ``(r, m)`` with ``0 <= m < n``; ``(d/dt)^n = t``.

    ``d = t d/dt`` so ``d (t^r D^m) = r t^r D^m + t^(r+1) D^(m+1)`` for
    ``m < n-1`` and ``d (t^r D^(n-1)) = r t^r D^(n-1) + t^(r+2)``.
    """

    name = "degreen"

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("degree-n module needs n >= 1")
        self.n = n

    def t_pow(self, k, key):
        r, m = key
        return {(r + k, m): ONE}

    def delta(self, key):
        r, m = key
        out = {}
        if r:
            out[(r, m)] = Scalar(r)
        if m < self.n - 1:
            out[(r + 1, m + 1)] = ONE
        else:
            out[(r + 2, 0)] = ONE
        return out


def a_basis_action(kmod: KModule, alpha: Scalar, beta: Scalar, gen: Generator, key) -> dict:
    if gen.kind == "C":
        return {}
    m = gen.index
    out: dict = {}
    if gen.kind == "I":
        if beta:
            for k, a in kmod.t_pow(m, key).items():
                add_into(out, k, beta * a)
        return out
    for k1, a1 in kmod.delta(key).items():
        for k2, a2 in kmod.t_pow(m, k1).items():
            add_into(out, k2, a1 * a2)
    ma = alpha * m
    if ma:
        for k, a in kmod.t_pow(m, key).items():
            add_into(out, k, ma * a)
    return out


class AModule(Module):
    """The H-module ``A_{alpha,beta}`` built on a K-module."""

    def __init__(self, kmod: KModule, alpha, beta):
        super().__init__()
        self.kmod = kmod
        self.alpha = as_scalar(alpha)
        self.beta = as_scalar(beta)
        self.family = kmod.name

    def _act_basis(self, gen, key):
        return a_basis_action(self.kmod, self.alpha, self.beta, gen, key)

    def declared_scalars(self):
        out = {c: ZERO for c in CENTRAL}
        out[I(0)] = self.beta
        return out

    # -- per-family text and sampling ----------------------------------

    def monomial(self, key):
        if isinstance(self.kmod, OmegaK):
            return _power("d", key)
        if isinstance(self.kmod, IntermediateK):
            return _power("t", key)
        if isinstance(self.kmod, Degree2K):
            n, j = key
            return _join(_power("t", n), "d" if j else "")
        r, m = key
        return _join(_power("t", r), _power("D", m))

    def from_term(self, coeff, powers, word):
        from ..parsing import ParseError

        if word is not None:
            raise ParseError("this family takes no (x) factor", 0, {"+", "end"})
        if isinstance(self.kmod, OmegaK):
            check_powers(powers, {"d"}, "omega")
            key = powers.get("d", 0)
            if key < 0:
                raise ParseError("negative power of d", 0, {"nonnegative exponent"})
        elif isinstance(self.kmod, IntermediateK):
            check_powers(powers, {"t"}, "Laurent")
            key = powers.get("t", 0)
        elif isinstance(self.kmod, Degree2K):
            check_powers(powers, {"t", "d"}, "degree-2")
            j = powers.get("d", 0)
            if j not in (0, 1):
                raise ParseError("degree-2 vectors are u(t) + w(t)*d", 0, {"d^0", "d^1"})
            key = (powers.get("t", 0), j)
        else:
            check_powers(powers, {"t", "D"}, "degree-n")
            m = powers.get("D", 0)
            if not 0 <= m < self.kmod.n:
                raise ParseError(f"power of D must lie in [0, {self.kmod.n})", 0, {"D^m"})
            key = (powers.get("t", 0), m)
        return self.vector_cls.basis(key, coeff)

    def random_vector(self, rng: random.Random, spread: int = 3):
        if isinstance(self.kmod, OmegaK):
            keys = list(range(spread + 1))
        elif isinstance(self.kmod, IntermediateK):
            keys = list(range(-spread, spread + 1))
        elif isinstance(self.kmod, Degree2K):
            keys = [(n, j) for n in range(-spread, spread + 1) for j in (0, 1)]
        else:
            keys = [(r, m) for r in range(-spread, spread + 1) for m in range(self.kmod.n)]
        return self.vector_cls._wrap(random_terms(rng, keys, rng.randint(1, 3)))

    def describe(self):
        out = {"family": self.family, "alpha": str(self.alpha), "beta": str(self.beta)}
        k = self.kmod
        if isinstance(k, OmegaK):
            out["lambda"] = str(k.lam)
        elif isinstance(k, IntermediateK):
            out["gamma"] = str(k.gamma)
        elif isinstance(k, Degree2K):
            out["f"] = {str(e): str(c) for e, c in sorted(k.f.items())}
        else:
            out["n"] = k.n
        return out


def _power(var, e):
    return "" if e == 0 else (var if e == 1 else f"{var}^{e}")


def _join(*parts):
    return "*".join(p for p in parts if p)


def intermediate_module(gamma, alpha, beta) -> AModule:
    return AModule(IntermediateK(gamma), alpha, beta)


def degree2_module(f: dict, alpha, beta) -> AModule:
    return AModule(Degree2K(f), alpha, beta)


def degreen_module(n: int, alpha, beta) -> AModule:
    return AModule(DegreeNK(n), alpha, beta)


def omega_k_module(lam, alpha, beta) -> AModule:
    """Omega(lambda) lifted through the A-construction (lifted convention, alpha shifted by one)."""
    return AModule(OmegaK(lam), alpha, beta)


# -- closed forms displayed for the examples --------------------------------

def intermediate_closed_form(gamma, alpha, beta, gen: Generator, n: int) -> dict:
    """``L_m t^n = (gamma + n + m alpha) t^(m+n)`` and ``I_m t^n = beta t^(m+n)``."""
    gamma, alpha, beta = as_scalar(gamma), as_scalar(alpha), as_scalar(beta)
    m = gen.index
    if gen.kind == "C":
        return {}
    c = gamma + n + alpha * m if gen.kind == "L" else beta
    return {n + m: c} if c else {}


def degree2_display_formula(f: dict, alpha, gen: Generator, key) -> dict:
    """The L-action on ``t^n d`` exactly as printed for the degree-two example:
    ``L_m (t^n d) = t^(m+n) (f(t) + m alpha + n d)``.

    Kept only to report its disagreement with the derived action.
    """
    alpha = as_scalar(alpha)
    m = gen.index
    n, j = key
    out: dict = {}
    if j == 0:
        add_into(out, (m + n, 0), Scalar(n) + alpha * m)
        add_into(out, (m + n, 1), ONE)
        return out
    for e, c in f.items():
        add_into(out, (m + n + e, 0), as_scalar(c))
    add_into(out, (m + n, 0), alpha * m)
    add_into(out, (m + n, 1), Scalar(n))
    return out


def degreen_display_formula(n_family: int, alpha, gen: Generator, key) -> dict:
    """The L-action printed for the degree-n example:
    ``L_k (t^r D^m) = (r t^(k+r) + alpha k t^(k+r+1)) D^m + t^(k+r+1) D^(m+1)``
    (with ``t^(k+r+2)`` replacing the last term when ``m = n-1``).
    """
    alpha = as_scalar(alpha)
    k = gen.index
    r, m = key
    out: dict = {}
    add_into(out, (k + r, m), Scalar(r))
    add_into(out, (k + r + 1, m), alpha * k)
    if m < n_family - 1:
        add_into(out, (k + r + 1, m + 1), ONE)
    else:
        add_into(out, (k + r + 2, 0), ONE)
    return out


# -- irreducibility and isomorphism criteria --------------------------------

IRREDUCIBLE, REDUCIBLE, NOT_DETERMINED = "Irreducible", "Reducible", "NotDetermined"


def a_irreducible(alpha, beta, del_surjective: bool | None = None,
                  is_natural_module: bool | None = None) -> str:
    """Irreducibility of ``A_{alpha,beta}`` for an irreducible K-module A.

    ``del_surjective`` states whether ``d A = A``; ``is_natural_module``
    whether A is isomorphic to C[t, t^-1] with its natural K-action.
    Either flag may be None when unknown, giving ``NotDetermined`` in the
    case that needs it.
    """
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    if beta or alpha not in (ZERO, ONE):
        return IRREDUCIBLE
    if alpha == 1:
        if del_surjective is None:
            return NOT_DETERMINED
        return IRREDUCIBLE if del_surjective else REDUCIBLE
    if is_natural_module is None:
        return NOT_DETERMINED
    return REDUCIBLE if is_natural_module else IRREDUCIBLE


def a_iso_check(params_a, params_b, same_k: bool, del_surjective_a: bool = False,
                del_surjective_b: bool = False) -> bool:
    """Whether ``A_{alpha1,beta1}`` and ``B_{alpha2,beta2}`` are isomorphic H-modules.

    ``params_a`` and ``params_b`` are ``(alpha, beta)`` pairs; ``same_k``
    asserts A and B are isomorphic K-modules.
    """
    a1, b1 = map(as_scalar, params_a)
    a2, b2 = map(as_scalar, params_b)
    if not same_k:
        return False
    if a1 == a2 and b1 == b2:
        return True
    if b1 or b2:
        return False
    if a1 == 1 and a2 == 0 and del_surjective_a:
        return True
    if a1 == 0 and a2 == 1 and del_surjective_b:
        return True
    return False
