#!/usr/bin/env python3
"""Tabulate where the printed example formulas disagree with the derived actions.

Three comparisons:
  * degree-2 family: L_m (t^n d) derived vs the printed formula;
  * degree-n family: L_k (t^r D^m) derived vs the printed formula;
  * the quotient parameter of the two-factor filtration under both sign
    conventions for the polynomial modules.
"""

import argparse
from fractions import Fraction

from hvtensor.algebra import L
from hvtensor.linalg import SparseEchelon, SparseVector
from hvtensor.modules import OmegaParams, degree2_module, degreen_module
from hvtensor.modules.kfamilies import degree2_display_formula, degreen_display_formula
from hvtensor.tensor import OmegaTensorModule, _family_basis, _omega_image


def show(module, terms):
    return module.format_vector(SparseVector._wrap(terms))


def degree2_table(alpha, span):
    f = {1: 1}
    M = degree2_module(f, alpha, 0)
    print(f"degree-2 family, f(t) = t, alpha = {alpha}")
    print(f"{'m':>3} {'n':>3}  {'derived':<28} printed")
    for m in range(-span, span + 1):
        for n in range(-span, span + 1):
            got = M.act_on_key(L(m), (n, 1))
            shown = degree2_display_formula(f, alpha, L(m), (n, 1))
            if got != shown:
                print(f"{m:>3} {n:>3}  {show(M, got):<28} {show(M, shown)}")


def degreen_table(n, alpha, span):
    M = degreen_module(n, alpha, 0)
    print(f"\ndegree-n family, n = {n}, alpha = {alpha}")
    print(f"{'k':>3} {'r':>3} {'m':>3}  {'derived':<28} printed")
    for k in range(-span, span + 1):
        for r in range(-span, span + 1):
            for m in range(n):
                got = M.act_on_key(L(k), (r, m))
                shown = degreen_display_formula(n, alpha, L(k), (r, m))
                if got != shown:
                    print(f"{k:>3} {r:>3} {m:>3}  {show(M, got):<28} {show(M, shown)}")


def quotient_conventions(a1, b1, a2, b2, s_max):
    print(f"\nquotient parameter, alpha = ({a1}, {a2}), beta = ({b1}, {b2})")
    M = OmegaTensorModule((OmegaParams(1, a1, b1), OmegaParams(1, a2, b2)))
    for s in range(1, s_max + 1):
        lower = SparseEchelon()
        for j in range(s):
            for n in range(s + 8):
                lower.add(_family_basis("A", j, n))
        v = SparseVector._wrap(_family_basis("A", s, 1))
        img = M.act(L(1), v)
        row = []
        for label, qa in (("s + a1 + a2", s + a1 + a2), ("a1 + a2 - s", a1 + a2 - s)):
            diff = img - SparseVector._wrap(_omega_image(L(1), OmegaParams(1, qa, b1 + b2), 1, "A", s))
            row.append(f"{label}: {'matches' if lower.contains(diff) else 'differs'}")
        print(f"  s = {s}:  " + ";  ".join(row))


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--span", type=int, default=2)
    p.add_argument("--alpha", type=Fraction, default=Fraction(2))
    args = p.parse_args()
    degree2_table(args.alpha, args.span)
    degreen_table(2, args.alpha, args.span)
    quotient_conventions(Fraction(1, 2), Fraction(2), Fraction(1, 3), Fraction(0), 3)


if __name__ == "__main__":
    main()
