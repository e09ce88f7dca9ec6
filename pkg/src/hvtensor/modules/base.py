"""Common machinery for concrete modules over the twisted Heisenberg-Virasoro algebra."""

from __future__ import annotations

import random

from ..algebra import Generator, LieElement
from ..linalg import SparseVector, add_into

_CACHE_LIMIT = 400_000


class Module:
    """A concrete module: a basis-level action extended linearly.

    Subclasses implement ``_act_basis(gen, key) -> dict`` returning the
    image of one basis vector. Results are memoised per instance, so the
    returned dicts must be treated as read-only.
    """

    family = "module"
    vector_cls = SparseVector

    def __init__(self):
        self._cache: dict = {}

    # -- action -----------------------------------------------------------

    def _act_basis(self, gen: Generator, key) -> dict:
        raise NotImplementedError

    def act_on_key(self, gen: Generator, key) -> dict:
        ck = (gen, key)
        hit = self._cache.get(ck)
        if hit is None:
            if len(self._cache) > _CACHE_LIMIT:
                self._cache.clear()
            hit = self._act_basis(gen, key)
            self._cache[ck] = hit
        return hit

    def act(self, gen: Generator, v: SparseVector) -> SparseVector:
        acc: dict = {}
        for key, c in v._terms.items():
            img = self.act_on_key(gen, key)
            if c == 1:
                for k, a in img.items():
                    add_into(acc, k, a)
            else:
                for k, a in img.items():
                    add_into(acc, k, c * a)
        return self.vector_cls._wrap(acc)

    def act_element(self, x, v: SparseVector) -> SparseVector:
        if isinstance(x, Generator):
            return self.act(x, v)
        acc: dict = {}
        for g, c in x._terms.items():
            for k, a in self.act(g, v)._terms.items():
                add_into(acc, k, c * a)
        return self.vector_cls._wrap(acc)

    def act_word(self, word, v: SparseVector) -> SparseVector:
        """Apply ``word[0] word[1] ... word[-1]`` to ``v`` (rightmost first)."""
        for g in reversed(list(word)):
            v = self.act(g, v)
        return v

    def zero(self) -> SparseVector:
        return self.vector_cls._wrap({})

    def vector(self, terms) -> SparseVector:
        return self.vector_cls(terms)

    # -- metadata ---------------------------------------------------------

    def declared_scalars(self) -> dict:
        """Generators known to act as scalars, ``{Generator: Scalar}``."""
        return {}

    def random_vector(self, rng: random.Random) -> SparseVector:
        raise NotImplementedError

    def sample_vectors(self, rng: random.Random, count: int = 4) -> list:
        return [self.random_vector(rng) for _ in range(count)]

    # -- text -------------------------------------------------------------

    def monomial(self, key) -> str:
        """Text of a basis key; the empty string denotes the unit monomial."""
        raise NotImplementedError

    def from_term(self, coeff, powers: dict, word) -> SparseVector:
        """Vector for one parsed term ``coeff * monomial [(x) word]``."""
        raise NotImplementedError

    def format_vector(self, v: SparseVector) -> str:
        from ..parsing import format_terms

        return format_terms(v.items(), self.monomial)

    def parse_vector(self, text: str) -> SparseVector:
        from ..parsing import parse_vector

        return parse_vector(text, self)

    def describe(self) -> dict:
        return {"family": self.family}


def check_powers(powers: dict, allowed: set, where: str) -> None:
    from ..parsing import ParseError

    extra = set(powers) - allowed
    if extra:
        raise ParseError(f"unexpected variable(s) {sorted(extra)} in {where} vector", 0, allowed)


def random_terms(rng: random.Random, keys: list, count: int) -> dict:
    from ..algebra import random_scalar

    acc: dict = {}
    for _ in range(count):
        add_into(acc, rng.choice(keys), random_scalar(rng))
    return acc
