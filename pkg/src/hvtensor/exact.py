"""Exact scalars over the Gaussian rationals Q(i), binomials and rational roots."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational


class DivisionByZero(ZeroDivisionError):
    pass


class NonRationalRootsRemain(ArithmeticError):
    """Raised when a polynomial does not split into rational linear factors."""

    def __init__(self, roots, residual):
        self.roots = roots
        self.residual = residual
        super().__init__(
            f"residual factor of degree {len(residual) - 1} has no rational roots"
        )


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {x!r} to an exact rational")


class Scalar:
    """Complex number a + b*i with arbitrary-precision rational a and b.

    Instances are immutable and hashable; ints and Fractions mix freely
    on either side of the arithmetic operators.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar):
            if im:
                raise TypeError("Scalar real part given as Scalar with extra im")
            object.__setattr__(self, "re", re.re)
            object.__setattr__(self, "im", re.im)
            return
        if isinstance(re, str):
            s = parse_scalar(re)
            object.__setattr__(self, "re", s.re)
            object.__setattr__(self, "im", s.im + _frac(im))
            return
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.re, self.im))

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "Scalar":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Scalar):
            return Scalar._make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return Scalar._make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Scalar):
            return Scalar._make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return Scalar._make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar._make(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Scalar):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return Scalar._make(a * c, b)
            return Scalar._make(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return Scalar._make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def inv(self) -> "Scalar":
        a, b = self.re, self.im
        if not b:
            if not a:
                raise DivisionByZero("inverse of exact zero")
            return Scalar._make(1 / a, b)
        n = a * a + b * b
        return Scalar._make(a / n, -b / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division by exact zero")
            return Scalar._make(self.re / other, self.im / other)
        if isinstance(other, Scalar):
            return self * other.inv()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(other) * self.inv()
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        if not self.im:
            return Scalar._make(self.re**n, self.im)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Scalar":
        return Scalar._make(self.re, -self.im)

    # -- predicates -------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def is_integer(self) -> bool:
        return not self.im and self.re.denominator == 1

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self):
        return (self.re, self.im)

    def is_negative_like(self) -> bool:
        """True when the canonical text of ``self`` starts with a minus sign."""
        return self.re < 0 or (not self.re and self.im < 0)

    # -- text -------------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar('{format_scalar(self)}')"


ZERO = Scalar._make(Fraction(0), Fraction(0))
ONE = Scalar._make(Fraction(1), Fraction(0))
I_UNIT = Scalar._make(Fraction(0), Fraction(1))


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return Scalar(x)


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(z: Scalar) -> str:
    re_, im = z.re, z.im
    if not im:
        return _fmt_frac(re_)
    if abs(im) == 1:
        imtxt = "i"
    else:
        imtxt = f"{_fmt_frac(abs(im))}i"
    if not re_:
        return imtxt if im > 0 else f"-{imtxt}"
    return f"{_fmt_frac(re_)}{'+' if im > 0 else '-'}{imtxt}"


_SCALAR_TOKEN = re.compile(r"\s*(?:(\d+)(?:\s*/\s*(\d+))?)?\s*(i)?\s*")


def parse_scalar(text: str) -> Scalar:
    """Parse ``a/b``, ``a``, ``a/b+c/d i``, ``i``, ``-i`` and similar forms.

    Whitespace is ignored. Each summand is an optional sign followed by
    an unsigned rational with an optional trailing ``i``.
    """
    from .parsing import ParseError

    s = text.replace(" ", "").replace("\t", "")
    if not s:
        raise ParseError("empty scalar literal", 0, {"number", "i"})
    pos, total, seen = 0, ZERO, False
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif seen:
            raise ParseError(f"unexpected {s[pos]!r} in scalar", pos, {"+", "-"})
        m = re.match(r"(\d+)(?:/(\d+))?", s[pos:])
        if m:
            num = int(m.group(1))
            den = int(m.group(2)) if m.group(2) else 1
            if den == 0:
                raise ParseError("zero denominator", pos, {"nonzero integer"})
            value = Fraction(num, den)
            pos += m.end()
        else:
            value = None
        if pos < len(s) and s[pos] == "i":
            pos += 1
            total = total + Scalar._make(Fraction(0), sign * (value if value is not None else Fraction(1)))
        elif value is None:
            raise ParseError(
                f"expected number or 'i' at {s[pos:pos + 1]!r}", pos, {"number", "i"}
            )
        else:
            total = total + Scalar._make(sign * value, Fraction(0))
        seen = True
    return total


def binomial(n: int, k: int) -> Fraction:
    """Exact binomial coefficient; zero when ``k > n`` or ``k < 0``."""
    if k < 0 or n < 0 or k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


def shifted_power(shift, n: int) -> dict:
    """Coefficients of ``(x + shift)**n`` as ``{power: Scalar}``."""
    shift = as_scalar(shift)
    out = {}
    p = ONE
    for j in range(n, -1, -1):
        c = p * math.comb(n, j)
        if c:
            out[j] = c
        p = p * shift
    return out


# -- rational roots --------------------------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _eval_poly(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs, r):
    """Divide the polynomial (low to high coefficients) by (x - r)."""
    n = len(coeffs) - 1
    out = [Fraction(0)] * n
    carry = coeffs[n]
    out[n - 1] = carry
    for j in range(n - 1, 0, -1):
        carry = coeffs[j] + r * carry
        out[j - 1] = carry
    return out


def rational_roots(coeffs, require_full: bool = True) -> list[Fraction]:
    """All rational roots, with multiplicity, of a monic rational polynomial.

    ``coeffs`` lists coefficients from the constant term upwards. The
    result is sorted. With ``require_full`` the polynomial must split
    completely over Q, otherwise ``NonRationalRootsRemain`` is raised.
    """
    p = [_frac(c) for c in coeffs]
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    if len(p) < 2:
        raise ValueError("rational_roots needs a polynomial of degree >= 1")
    if p[-1] != 1:
        raise ValueError("rational_roots needs a monic polynomial")
    roots: list[Fraction] = []
    while len(p) > 1 and p[0] == 0:
        roots.append(Fraction(0))
        p = p[1:]
    while len(p) > 1:
        lcm = math.lcm(*(c.denominator for c in p))
        ints = [int(c * lcm) for c in p]
        g = math.gcd(*ints)
        ints = [c // g for c in ints]
        found = None
        for q in _divisors(ints[-1]):
            for a in _divisors(ints[0]):
                for cand in (Fraction(a, q), Fraction(-a, q)):
                    if _eval_poly(p, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        p = _deflate(p, found)
    if len(p) > 1 and require_full:
        raise NonRationalRootsRemain(sorted(roots), p)
    return sorted(roots)
