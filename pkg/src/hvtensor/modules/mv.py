"""Modules M(V, Omega(lambda, alpha, beta)) = V (x) C[t] over a truncated algebra.

V is a finite-dimensional module over the quotient of span{L_i, I_j :
i >= 0, j >= d} by the subalgebra generated by L_i (i > r), I_j (j > r+d).
It is given by matrices for Lbar_0..Lbar_r and Ibar_d..Ibar_{r+d}.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from ..algebra import CENTRAL, I
from ..exact import ONE, ZERO, Scalar, as_scalar, shifted_power
from ..linalg import Matrix, add_into, commutator
from .base import Module, check_powers, random_terms
from .omega import OmegaParams


class InvalidHBarModule(ValueError):
    pass


@dataclass(frozen=True)
class HBarModuleData:
    r: int
    d: int
    dim: int
    lmats: tuple  # Lbar_0 .. Lbar_r
    imats: tuple  # Ibar_d .. Ibar_{r+d}

    def __post_init__(self):
        if self.d not in (0, 1) or self.r < 0 or self.dim < 1:
            raise ValueError("need r >= 0, d in {0, 1}, dim >= 1")
        if len(self.lmats) != self.r + 1 or len(self.imats) != self.r + 1:
            raise ValueError("need r+1 L-matrices and r+1 I-matrices")
        for m in self.lmats + self.imats:
            if m.rows != self.dim or m.cols != self.dim:
                raise ValueError("matrix shape does not match dim")

    def lbar(self, i: int) -> Matrix:
        return self.lmats[i]

    def ibar(self, j: int) -> Matrix:
        """``Ibar_j`` for ``d <= j <= r + d``."""
        return self.imats[j - self.d]

    def r_prime(self) -> int | None:
        """Largest r' with ``Ibar_{r'+d} V != 0``; None when every Ibar vanishes."""
        best = None
        for j in range(self.d, self.r + self.d + 1):
            if not self.ibar(j).is_zero():
                best = j - self.d
        return best

    def t_threshold(self) -> int:
        """T-operators of order ``s`` above this value act trivially."""
        rp = self.r_prime()
        return -1 if rp is None else 2 * (rp + self.d)

    def to_json(self) -> dict:
        def mat(m):
            return [[str(x) for x in row] for row in m.to_rows()]

        return {"r": self.r, "d": self.d, "dim": self.dim,
                "L": [mat(m) for m in self.lmats], "I": [mat(m) for m in self.imats]}

    @classmethod
    def from_json(cls, data: dict) -> "HBarModuleData":
        lm = tuple(Matrix.from_rows(m) for m in data["L"])
        im = tuple(Matrix.from_rows(m) for m in data["I"])
        dim = lm[0].rows
        return cls(int(data["r"]), int(data["d"]), dim, lm, im)


def hbar_validate(V: HBarModuleData):
    """Check every truncated commutation relation exactly; returns a Report."""
    from ..report import Check, Report

    r, d = V.r, V.d
    fails = []
    for i in range(r + 1):
        for j in range(r + 1):
            want = V.lbar(i + j).scale(j - i) if i + j <= r else Matrix.zeros(V.dim)
            if commutator(V.lbar(i), V.lbar(j)) != want:
                fails.append({"pair": f"[Lbar_{i}, Lbar_{j}]"})
    for i in range(r + 1):
        for j in range(d, r + d + 1):
            want = V.ibar(i + j).scale(j) if i + j <= r + d else Matrix.zeros(V.dim)
            if commutator(V.lbar(i), V.ibar(j)) != want:
                fails.append({"pair": f"[Lbar_{i}, Ibar_{j}]"})
    for i in range(d, r + d + 1):
        for j in range(i + 1, r + d + 1):
            if not commutator(V.ibar(i), V.ibar(j)).is_zero():
                fails.append({"pair": f"[Ibar_{i}, Ibar_{j}]"})
    chk = Check("hbar-relations", {"r": r, "d": d, "dim": V.dim}, "all relations hold",
                f"{len(fails)} failing pairs", not fails)
    return Report.from_checks([chk], counterexample=fails[0] if fails else None)


def scalar_hbar(sigma, tau) -> HBarModuleData:
    """One-dimensional V with r = d = 0, ``Lbar_0 = sigma``, ``Ibar_0 = tau``."""
    return HBarModuleData(0, 0, 1, (Matrix.from_rows([[sigma]]),), (Matrix.from_rows([[tau]]),))


def random_hbar(rng: random.Random, dim: int, r: int, d: int) -> HBarModuleData:
    """A random valid V of the given shape.

    ``Lbar_0`` is diagonal with entries ``mu, mu-1, ...`` so that a matrix
    supported on the ``j``-th superdiagonal has degree ``j``; positive
    generators are random superdiagonal matrices, ``Ibar_0`` is scalar,
    and the one degree-2 relation ``[Lbar_1, Ibar_1] = Ibar_2`` is imposed.
    """
    from ..algebra import random_scalar

    def superdiag(j):
        rows = [[ZERO] * dim for _ in range(dim)]
        for a in range(dim - j):
            rows[a][a + j] = random_scalar(rng, complex_rate=0.0)
        return Matrix.from_rows(rows)

    mu = random_scalar(rng, complex_rate=0.0)
    l0 = Matrix.from_rows([[mu - a if a == b else ZERO for b in range(dim)] for a in range(dim)])
    lm = [l0] + [superdiag(j) for j in range(1, r + 1)]
    im = {}
    for j in range(d, r + d + 1):
        im[j] = Matrix.identity(dim).scale(random_scalar(rng, complex_rate=0.0)) if j == 0 else superdiag(j)
    if r >= 1 and 1 in im:
        bracket11 = commutator(lm[1], im[1])
        if 2 in im:
            im[2] = bracket11
        elif not bracket11.is_zero():
            im[1] = lm[1].scale(random_scalar(rng, complex_rate=0.0))
    V = HBarModuleData(r, d, dim, tuple(lm), tuple(im[j] for j in range(d, r + d + 1)))
    if not hbar_validate(V).ok:
        raise InvalidHBarModule("random_hbar produced an invalid module")
    return V


class MVModule(Module):
    """Keys ``(a, e)`` stand for ``e_a (x) t^e``.

        L_m (v (x) f) = v (x) lam^m (t - m alpha) f(t-m)
                        + sum_i m^(i+1)/(i+1)! Lbar_i v (x) lam^m f(t-m)
        I_m (v (x) f) = sum_i m^(i+d)/(i+d)! Ibar_{i+d} v (x) lam^m beta f(t-m)

    with ``0^0 = 1``, so ``I_0`` acts as ``beta Ibar_0`` when ``d = 0``.
    """

    family = "mv"

    def __init__(self, V: HBarModuleData, params: OmegaParams, validate: bool = True):
        super().__init__()
        if validate and not hbar_validate(V).ok:
            raise InvalidHBarModule("V violates the truncated relations")
        self.V = V
        self.params = params

    def _column(self, M: Matrix, a: int):
        return [(b, M[b, a]) for b in range(M.rows) if M[b, a]]

    def _act_basis(self, gen, key):
        if gen.kind == "C":
            return {}
        a, e = key
        m = gen.index
        p, V = self.params, self.V
        lm = p.lam ** m
        shifted = shifted_power(-m, e)  # f(t - m) for f = t^e
        out: dict = {}
        if gen.kind == "L":
            ma = p.alpha * m
            for j, c in shifted.items():
                c = lm * c
                add_into(out, (a, j + 1), c)
                if ma:
                    add_into(out, (a, j), -(ma * c))
            for i in range(V.r + 1):
                w = Fraction(m ** (i + 1), math.factorial(i + 1))
                if not w:
                    continue
                for b, x in self._column(V.lbar(i), a):
                    coef = x * w * lm
                    for j, c in shifted.items():
                        add_into(out, (b, j), coef * c)
            return out
        if not p.beta:
            return out
        for i in range(V.r + 1):
            w = Fraction(m ** (i + V.d), math.factorial(i + V.d))
            if not w:
                continue
            for b, x in self._column(V.ibar(i + V.d), a):
                coef = x * w * lm * p.beta
                for j, c in shifted.items():
                    add_into(out, (b, j), coef * c)
        return out

    def declared_scalars(self):
        out = {c: ZERO for c in CENTRAL}
        V = self.V
        if V.d == 1:
            out[I(0)] = ZERO
        else:
            i0 = V.ibar(0)
            tau = i0[0, 0]
            if i0 == Matrix.identity(V.dim).scale(tau):
                out[I(0)] = tau * self.params.beta
        return out

    def random_vector(self, rng: random.Random, max_degree: int = 3):
        keys = [(a, e) for a in range(self.V.dim) for e in range(max_degree + 1)]
        return self.vector_cls._wrap(random_terms(rng, keys, rng.randint(1, 3)))

    def monomial(self, key):
        a, e = key
        return f"e{a}" + ("" if e == 0 else ("*t" if e == 1 else f"*t^{e}"))

    def from_term(self, coeff, powers, word):
        from ..parsing import ParseError

        evars = [v for v in powers if v.startswith("e") and v[1:].isdigit()]
        check_powers(powers, set(evars) | {"t"}, "M(V, Omega)")
        if word is not None or len(evars) != 1 or powers[evars[0]] != 1:
            raise ParseError("M(V, Omega) terms look like e<index>*t^<n>", 0, {"e<index>"})
        a = int(evars[0][1:])
        e = powers.get("t", 0)
        if not 0 <= a < self.V.dim or e < 0:
            raise ParseError("basis index or t-exponent out of range", 0, {"e<index>", "t^n"})
        return self.vector_cls.basis((a, e), coeff)

    def describe(self):
        return {"family": self.family, **self.params.to_json(), "V": self.V.to_json()}
