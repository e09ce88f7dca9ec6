"""The twisted Heisenberg-Virasoro algebra: generators, bracket and self-checks.

Basis: ``L[m]``, ``I[m]`` for every integer ``m`` and the central
``C1``, ``C2``, ``C3``. The nonzero brackets are

    [L_m, L_n] = (n-m) L_{m+n} + delta_{m+n,0} (m^3-m)/12 C1
    [L_m, I_n] = n I_{m+n} + delta_{m+n,0} (m^2+m) C2
    [I_m, I_n] = n delta_{m+n,0} C3
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import NamedTuple

from .exact import ONE, ZERO, Scalar, as_scalar
from .linalg import SparseVector, add_into


class Generator(NamedTuple):
    """A basis element: ``kind`` is ``'L'``, ``'I'`` or ``'C'``."""

    kind: str
    index: int

    def __str__(self):
        if self.kind == "C":
            return f"C{self.index}"
        return f"{self.kind}[{self.index}]"

    @property
    def is_central(self) -> bool:
        return self.kind == "C"


def L(m: int) -> Generator:
    return Generator("L", int(m))


def I(m: int) -> Generator:  # noqa: E743
    return Generator("I", int(m))


def C(j: int) -> Generator:
    if j not in (1, 2, 3):
        raise ValueError(f"central index must be 1, 2 or 3, got {j}")
    return Generator("C", j)


CENTRAL = (C(1), C(2), C(3))


class LieElement(SparseVector):
    """Finite linear combination of generators."""

    __slots__ = ()

    @classmethod
    def of(cls, gen: Generator, coeff=ONE) -> "LieElement":
        return cls.basis(gen, coeff)

    def __str__(self):
        from .parsing import format_terms

        return format_terms(self.items(), lambda g: str(g))


def basis_bracket(x: Generator, y: Generator) -> dict:
    """Bracket of two basis generators as ``{Generator: Fraction}``."""
    if x.kind == "C" or y.kind == "C":
        return {}
    m, n = x.index, y.index
    out = {}
    if x.kind == "L" and y.kind == "L":
        if n - m:
            out[Generator("L", m + n)] = Fraction(n - m)
        if m + n == 0 and m * m * m - m:
            out[Generator("C", 1)] = Fraction(m * m * m - m, 12)
    elif x.kind == "L" and y.kind == "I":
        if n:
            out[Generator("I", m + n)] = Fraction(n)
        if m + n == 0 and m * m + m:
            out[Generator("C", 2)] = Fraction(m * m + m)
    elif x.kind == "I" and y.kind == "L":
        # [I_m, L_n] = -[L_n, I_m]
        if m:
            out[Generator("I", m + n)] = Fraction(-m)
        if m + n == 0 and n * n + n:
            out[Generator("C", 2)] = Fraction(-(n * n + n))
    else:
        if m + n == 0 and n:
            out[Generator("C", 3)] = Fraction(n)
    return out


def bracket(x, y) -> LieElement:
    """Bilinear bracket of Lie elements (generators are accepted too)."""
    if isinstance(x, Generator):
        x = LieElement.of(x)
    if isinstance(y, Generator):
        y = LieElement.of(y)
    acc: dict = {}
    for gx, cx in x._terms.items():
        for gy, cy in y._terms.items():
            b = basis_bracket(gx, gy)
            if b:
                c = cx * cy
                for g, k in b.items():
                    add_into(acc, g, c * k)
    return LieElement._wrap(acc)


def basis(window: int) -> list[Generator]:
    """All generators with ``|mode| <= window``, central ones included."""
    gens = [L(m) for m in range(-window, window + 1)]
    gens += [I(m) for m in range(-window, window + 1)]
    return gens + list(CENTRAL)


def random_scalar(rng: random.Random, complex_rate: float = 0.25, bound: int = 5) -> Scalar:
    re_ = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
    im = Fraction(0)
    if rng.random() < complex_rate:
        im = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
    return Scalar(re_, im)


def random_element(rng: random.Random, window: int, terms: int = 3) -> LieElement:
    gens = basis(window)
    acc: dict = {}
    for _ in range(terms):
        add_into(acc, rng.choice(gens), random_scalar(rng))
    return LieElement._wrap(acc)


def _jacobiator(x, y, z) -> LieElement:
    return bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y)


def jacobi_check(window: int = 8, trials: int = 50, seed: int = 0, exhaustive: bool = True):
    """Check antisymmetry and the Jacobi identity exactly.

    With ``exhaustive`` every ordered triple of basis generators with
    ``|mode| <= window`` is checked; ``trials`` further triples of random
    Lie elements are drawn from a ``random.Random(seed)`` stream.
    Returns a ``Report``.
    """
    from .report import Check, Report

    checks = []
    gens = basis(window)
    fails = []
    n_pairs = 0
    for x, y in itertools.product(gens, repeat=2):
        n_pairs += 1
        if bracket(x, y) != -bracket(y, x):
            fails.append({"x": str(x), "y": str(y)})
    checks.append(Check("antisymmetry/basis", {"window": window, "pairs": n_pairs},
                        "[x,y] = -[y,x]", f"{len(fails)} failures", not fails))
    counter = fails[0] if fails else None

    if exhaustive:
        # Precompute pair brackets so the triple loop is cheap.
        pb = {(x, y): basis_bracket(x, y) for x in gens for y in gens}
        jfails = []
        n_triples = 0
        for x, y, z in itertools.product(gens, repeat=3):
            n_triples += 1
            acc: dict = {}
            for (a, b, c) in ((x, y, z), (y, z, x), (z, x, y)):
                for g, k in pb[(a, b)].items():
                    for g2, k2 in basis_bracket(g, c).items():
                        add_into(acc, g2, k * k2)
            if acc:
                jfails.append({"x": str(x), "y": str(y), "z": str(z)})
        checks.append(Check("jacobi/basis", {"window": window, "triples": n_triples},
                            "0", f"{len(jfails)} failures", not jfails))
        if jfails and counter is None:
            counter = jfails[0]

    rng = random.Random(seed)
    rfails = []
    for _ in range(trials):
        x, y, z = (random_element(rng, window) for _ in range(3))
        if _jacobiator(x, y, z) or bracket(x, y) != -bracket(y, x):
            rfails.append({"x": str(x), "y": str(y), "z": str(z)})
    checks.append(Check("jacobi/random-elements", {"window": window, "trials": trials, "seed": seed},
                        "0", f"{len(rfails)} failures", not rfails))
    if rfails and counter is None:
        counter = rfails[0]
    return Report.from_checks(checks, counterexample=counter, seed=seed)


def centrality_check(window: int = 8):
    """I_0, C1, C2, C3 bracket to zero with every basis generator."""
    from .report import Check, Report

    fails = []
    for z in (I(0),) + CENTRAL:
        for x in basis(window):
            if bracket(x, z) or bracket(z, x):
                fails.append({"x": str(x), "z": str(z)})
    chk = Check("centrality", {"window": window}, "[x, z] = 0 for z in {I[0], C1, C2, C3}",
                f"{len(fails)} failures", not fails)
    return Report.from_checks([chk], counterexample=fails[0] if fails else None)
