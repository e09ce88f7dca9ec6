"""Highest-weight induced modules Ind(M) from a one-dimensional M.

M = C v with L_m v = I_m v = 0 for m >= 1, L_0 v = h v, I_0 v = c0 v and
C_j v = c_j v. A basis of Ind(M) is given by PBW monomials

    L_{-i_1} ... L_{-i_a} I_{-j_1} ... I_{-j_b} v,
    i_1 >= ... >= i_a >= 1,  j_1 >= ... >= j_b >= 1,

i.e. every L factor sits left of every I factor and each block is sorted
by non-increasing depth.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from ..algebra import CENTRAL, Generator, I, L, basis_bracket
from ..exact import ONE, ZERO, Scalar, as_scalar
from ..linalg import SparseVector, add_into
from .base import Module, check_powers, random_terms


class ZeroVector(ValueError):
    pass


@dataclass(frozen=True)
class HighestWeightData:
    h: Scalar
    c0: Scalar
    c1: Scalar
    c2: Scalar
    c3: Scalar = ZERO

    def __post_init__(self):
        for name in ("h", "c0", "c1", "c2", "c3"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if self.c3:
            raise ValueError("induction is only supported with c3 = 0")

    def is_admissible(self) -> bool:
        """``c0 + (n-1) c2 != 0`` for every nonzero integer n."""
        if not self.c2:
            return bool(self.c0)
        q = self.c0 / self.c2
        return not (q.is_integer() and q != 1)

    def central_value(self, gen: Generator) -> Scalar:
        if gen == I(0):
            return self.c0
        return (self.c1, self.c2, self.c3)[gen.index - 1]

    def to_json(self) -> dict:
        return {"h": str(self.h), "c0": str(self.c0), "c1": str(self.c1), "c2": str(self.c2)}


class PBWMonomial(NamedTuple):
    """``L_{-lpart[0]} ... I_{-ipart[0]} ... v``; both parts non-increasing."""

    lpart: tuple = ()
    ipart: tuple = ()

    @property
    def depth(self) -> int:
        return sum(self.lpart) + sum(self.ipart)

    def word(self) -> list:
        return [L(-i) for i in self.lpart] + [I(-j) for j in self.ipart]

    def first(self) -> Generator | None:
        if self.lpart:
            return L(-self.lpart[0])
        if self.ipart:
            return I(-self.ipart[0])
        return None

    def tail(self) -> "PBWMonomial":
        if self.lpart:
            return PBWMonomial(self.lpart[1:], self.ipart)
        return PBWMonomial(self.lpart, self.ipart[1:])

    def __str__(self):
        if not self.lpart and not self.ipart:
            return "[v]"
        return "[" + " ".join(f"{g.kind}({g.index})" for g in self.word()) + " | v]"


HW = PBWMonomial((), ())


def _can_prepend(g: Generator, first: Generator | None) -> bool:
    """Whether the negative-mode ``g`` may sit in front of ``first`` canonically."""
    if first is None:
        return True
    if g.kind == "L":
        return first.kind == "I" or -g.index >= -first.index
    return first.kind == "I" and -g.index >= -first.index


def _prepend(g: Generator, mono: PBWMonomial) -> PBWMonomial:
    if g.kind == "L":
        return PBWMonomial((-g.index,) + mono.lpart, mono.ipart)
    return PBWMonomial(mono.lpart, (-g.index,) + mono.ipart)


def _partitions(n: int, largest: int | None = None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def pbw_monomials(max_depth: int) -> tuple:
    """All PBW monomials of depth at most ``max_depth``, sorted."""
    out = []
    for total in range(max_depth + 1):
        for a in range(total + 1):
            for lp in _partitions(a):
                for ip in _partitions(total - a):
                    out.append(PBWMonomial(lp, ip))
    return tuple(sorted(out))


class IndModule(Module):
    """Ind(M) for one-dimensional highest-weight data; keys are ``PBWMonomial``."""

    family = "ind"

    def __init__(self, hw: HighestWeightData):
        super().__init__()
        self.hw = hw

    def _act_basis(self, gen, mono):
        if gen.kind == "C" or gen == I(0):
            c = self.hw.central_value(gen)
            return {mono: c} if c else {}
        first = mono.first()
        if first is None:
            m = gen.index
            if m > 0:
                return {}
            if m == 0:
                return {mono: self.hw.h} if self.hw.h else {}
            return {_prepend(gen, mono): ONE}
        if gen.index < 0 and _can_prepend(gen, first):
            return {_prepend(gen, mono): ONE}
        # gen X tail = X (gen tail) + [gen, X] tail
        tail = mono.tail()
        acc: dict = {}
        for k1, a1 in self.act_on_key(gen, tail).items():
            for k2, a2 in self.act_on_key(first, k1).items():
                add_into(acc, k2, a1 * a2)
        for g, c in basis_bracket(gen, first).items():
            for k2, a2 in self.act_on_key(g, tail).items():
                add_into(acc, k2, c * a2)
        return acc

    def hw_vector(self) -> SparseVector:
        return self.vector_cls.basis(HW)

    def declared_scalars(self):
        out = {c: self.hw.central_value(c) for c in CENTRAL}
        out[I(0)] = self.hw.c0
        return out

    def random_vector(self, rng: random.Random, max_depth: int = 3):
        return self.vector_cls._wrap(random_terms(rng, list(pbw_monomials(max_depth)), rng.randint(1, 3)))

    def monomial(self, mono):
        return str(mono)

    def from_term(self, coeff, powers, word):
        from ..parsing import ParseError

        check_powers(powers, set(), "Ind")
        if word is None:
            raise ParseError("Ind vectors need a [ ... | v] factor", 0, {"["})
        return self.act_word(word, self.hw_vector()) * coeff

    def describe(self):
        return {"family": self.family, **self.hw.to_json()}


def ind_depth(v: SparseVector) -> int:
    """``1 + max depth``: every ``L_k``, ``I_k`` with ``k >= ind_depth(v)`` kills v."""
    if not v:
        raise ZeroVector("ind_depth of the zero vector")
    return 1 + max(m.depth for m in v._terms)


if sys.getrecursionlimit() < 10000:
    sys.setrecursionlimit(10000)
