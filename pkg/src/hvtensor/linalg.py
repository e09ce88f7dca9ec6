"""Sparse vectors, dense exact matrices and fraction-free linear solves."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exact import ONE, ZERO, Scalar, as_scalar


class SingularMatrix(ArithmeticError):
    pass


def add_into(acc: dict, key, coeff) -> None:
    """``acc[key] += coeff``, dropping the entry when it cancels."""
    c = acc.get(key)
    if c is None:
        if coeff:
            acc[key] = coeff
        return
    c = c + coeff
    if c:
        acc[key] = c
    else:
        del acc[key]


def axpy_into(acc: dict, coeff, terms) -> None:
    """``acc += coeff * terms`` for a mapping or item iterable ``terms``."""
    items = terms.items() if hasattr(terms, "items") else terms
    if coeff == 1:
        for k, c in items:
            add_into(acc, k, c)
    else:
        for k, c in items:
            add_into(acc, k, coeff * c)


class SparseVector:
    """Immutable finite linear combination ``{basis key: Scalar}``.

    Zero coefficients are never stored, so two vectors are equal exactly
    when their term maps are equal. Keys must be hashable and mutually
    comparable (iteration is in sorted key order).
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for k, c in items:
                add_into(clean, k, as_scalar(c))
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict):
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def basis(cls, key, coeff=ONE):
        return cls._wrap({key: as_scalar(coeff)} if coeff else {})

    def terms(self) -> dict:
        """A fresh mutable copy of the term map."""
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def keys(self):
        return sorted(self._terms)

    def __iter__(self):
        return iter(self.keys())

    def __len__(self):
        return len(self._terms)

    def __getitem__(self, key) -> Scalar:
        return self._terms.get(key, ZERO)

    def __contains__(self, key):
        return key in self._terms

    def __bool__(self):
        return bool(self._terms)

    def max_key(self):
        return max(self._terms)

    def __add__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms.items():
            add_into(acc, k, c)
        return type(self)._wrap(acc)

    def __sub__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms.items():
            add_into(acc, k, -c)
        return type(self)._wrap(acc)

    def __neg__(self):
        return type(self)._wrap({k: -c for k, c in self._terms.items()})

    def __mul__(self, s):
        if isinstance(s, SparseVector):
            return NotImplemented
        s = as_scalar(s)
        if not s:
            return type(self)._wrap({})
        if s == 1:
            return self
        return type(self)._wrap({k: s * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * as_scalar(s).inv()

    def __eq__(self, other):
        if isinstance(other, SparseVector):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{k!r}: {c}" for k, c in self.items())
        return f"{type(self).__name__}({{{inner}}})"


def linear_combination(pairs: Iterable, cls=SparseVector):
    """Sum of ``coeff * vector`` over ``(coeff, vector)`` pairs."""
    acc: dict = {}
    for coeff, vec in pairs:
        axpy_into(acc, as_scalar(coeff), vec._terms)
    return cls._wrap(acc)


# -- dense matrices ---------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows*cols")

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix rows")
        flat = tuple(as_scalar(x) for r in rows for x in r)
        return cls(len(rows), ncols, flat)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "Matrix":
        m = n if m is None else m
        return cls(n, m, (ZERO,) * (n * m))

    @classmethod
    def unit(cls, n: int, i: int, j: int, coeff=ONE) -> "Matrix":
        """``coeff`` times the matrix unit with a single 1 at ``(i, j)``."""
        e = [ZERO] * (n * n)
        e[i * n + j] = as_scalar(coeff)
        return cls(n, n, tuple(e))

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, s) -> "Matrix":
        s = as_scalar(s)
        return Matrix(self.rows, self.cols, tuple(s * a for a in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    if r[k]:
                        b = other.entries[k * other.cols + j]
                        if b:
                            acc = acc + r[k] * b
                out.append(acc)
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, vec) -> tuple:
        return tuple(
            sum((a * x for a, x in zip(self.row(i), vec) if a and x), ZERO)
            for i in range(self.rows)
        )

    def is_zero(self) -> bool:
        return not any(self.entries)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


# -- solving ----------------------------------------------------------------


class _TupleVec:
    """Adapter giving plain scalar sequences the vector arithmetic used below."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = tuple(as_scalar(x) for x in v)

    def __add__(self, o):
        return _TupleVec(a + b for a, b in zip(self.v, o.v))

    def __sub__(self, o):
        return _TupleVec(a - b for a, b in zip(self.v, o.v))

    def __mul__(self, s):
        return _TupleVec(s * a for a in self.v)

    __rmul__ = __mul__

    def __truediv__(self, s):
        inv = as_scalar(s).inv()
        return _TupleVec(inv * a for a in self.v)


def _row_scale(row) -> int:
    from math import lcm

    dens = [1]
    for x in row:
        dens.append(x.re.denominator)
        dens.append(x.im.denominator)
    return lcm(*dens)


def linear_solve(A: Matrix, b: list) -> list:
    """Solve ``A x = b`` exactly for square invertible ``A``.

    Each entry of ``b`` may be a scalar sequence or any vector object
    supporting ``+``, ``-`` and multiplication by a ``Scalar`` (for
    example a ``SparseVector`` in some module). The result has the same
    kind of entries. Rows are scaled to Gaussian integers and eliminated
    with the Bareiss recurrence, so matrix entries stay integral and
    every division in the elimination is exact.
    """
    n = A.rows
    if A.cols != n:
        raise ValueError("linear_solve needs a square matrix")
    if len(b) != n:
        raise ValueError("right-hand side length mismatch")
    wrap = [isinstance(x, (tuple, list)) for x in b]
    rhs = [_TupleVec(x) if w else x for x, w in zip(b, wrap)]
    M = []
    for i in range(n):
        row = list(A.row(i))
        s = _row_scale(row)
        M.append([x * s for x in row])
        rhs[i] = rhs[i] * Scalar(s)
    prev = ONE
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k]), None)
        if piv is None:
            raise SingularMatrix(f"matrix is singular (rank < {n})")
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            rhs[k], rhs[piv] = rhs[piv], rhs[k]
        mkk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            Mi, Mk = M[i], M[k]
            for j in range(k + 1, n):
                Mi[j] = (mkk * Mi[j] - mik * Mk[j]) / prev
            rhs[i] = (rhs[i] * mkk - rhs[k] * mik) / prev
            Mi[k] = ZERO
        prev = mkk
    x = [None] * n
    for i in range(n - 1, -1, -1):
        acc = rhs[i]
        for j in range(i + 1, n):
            if M[i][j]:
                acc = acc - x[j] * M[i][j]
        x[i] = acc / M[i][i]
    return [list(xi.v) if w else xi for xi, w in zip(x, wrap)]


def rank(A: Matrix) -> int:
    """Exact rank by Gaussian elimination over Q(i)."""
    rows = [list(A.row(i)) for i in range(A.rows)]
    r = 0
    for c in range(A.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inv()
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                f = f * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


class SparseEchelon:
    """Incremental row-echelon basis of a span of sparse vectors.

    Each stored row is normalised so its largest key (the pivot) has
    coefficient 1. A vector lies in the span exactly when repeatedly
    cancelling its largest key against a pivot row reduces it to zero.
    """

    def __init__(self):
        self.rows: dict = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec) -> dict:
        v = dict(vec._terms) if isinstance(vec, SparseVector) else dict(vec)
        rows = self.rows
        while v:
            k = max(v)
            row = rows.get(k)
            if row is None:
                return v
            c = v[k]
            for key, a in row.items():
                add_into(v, key, -(c * a))
        return v

    def add(self, vec) -> dict | None:
        """Insert ``vec``; return the new normalised row, or None if dependent."""
        v = self.reduce(vec)
        if not v:
            return None
        k = max(v)
        inv = v[k].inv()
        if inv != 1:
            v = {key: inv * a for key, a in v.items()}
        self.rows[k] = v
        return v

    def contains(self, vec) -> bool:
        return not self.reduce(vec)
