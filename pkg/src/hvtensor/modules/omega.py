"""The polynomial modules Omega(lambda, alpha, beta) = C[d]."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..algebra import Generator
from ..exact import ZERO, Scalar, as_scalar, shifted_power
from ..linalg import add_into
from .base import Module, check_powers, random_terms


@dataclass(frozen=True)
class OmegaParams:
    lam: Scalar
    alpha: Scalar
    beta: Scalar

    def __post_init__(self):
        object.__setattr__(self, "lam", as_scalar(self.lam))
        object.__setattr__(self, "alpha", as_scalar(self.alpha))
        object.__setattr__(self, "beta", as_scalar(self.beta))
        if not self.lam:
            raise ValueError("Omega(lambda, alpha, beta) needs lambda != 0")

    def key(self):
        return (self.lam.sort_key(), self.alpha.sort_key(), self.beta.sort_key())

    def to_json(self) -> dict:
        return {"lambda": str(self.lam), "alpha": str(self.alpha), "beta": str(self.beta)}


def omega_basis_action(gen: Generator, p: OmegaParams, n: int) -> dict:
    """Image of ``d^n`` under ``gen``:

    ``L_k d^n = lam^k (d + k alpha)(d - k)^n`` and
    ``I_k d^n = lam^k beta (d - k)^n``; central elements act as zero.
    """
    if gen.kind == "C":
        return {}
    k = gen.index
    lk = p.lam ** k
    shifted = shifted_power(-k, n)
    out: dict = {}
    if gen.kind == "I":
        if not p.beta:
            return out
        s = lk * p.beta
        for j, c in shifted.items():
            add_into(out, j, s * c)
        return out
    ka = p.alpha * k
    for j, c in shifted.items():
        c = lk * c
        add_into(out, j + 1, c)
        if ka:
            add_into(out, j, ka * c)
    return out


class OmegaModule(Module):
    """Omega(lambda, alpha, beta) with basis keys ``n`` standing for ``d^n``."""

    family = "omega"

    def __init__(self, params: OmegaParams):
        super().__init__()
        self.params = params

    def _act_basis(self, gen, n):
        return omega_basis_action(gen, self.params, n)

    def declared_scalars(self):
        from ..algebra import CENTRAL, I

        out = {c: ZERO for c in CENTRAL}
        out[I(0)] = self.params.beta
        return out

    def random_vector(self, rng: random.Random, max_degree: int = 4):
        return self.vector_cls._wrap(random_terms(rng, list(range(max_degree + 1)), rng.randint(1, 3)))

    def monomial(self, n):
        return "" if n == 0 else ("d" if n == 1 else f"d^{n}")

    def from_term(self, coeff, powers, word):
        from ..parsing import ParseError

        check_powers(powers, {"d"}, "omega")
        if word is not None:
            raise ParseError("omega vectors take no (x) factor", 0, {"d"})
        n = powers.get("d", 0)
        if n < 0:
            raise ParseError("negative power of d", 0, {"nonnegative exponent"})
        return self.vector_cls.basis(n, coeff)

    def describe(self):
        return {"family": self.family, **self.params.to_json()}
