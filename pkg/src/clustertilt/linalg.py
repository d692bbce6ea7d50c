"""Exact linear algebra over Q or a prime field F_p.

Matrices are python-flint ``fmpq_mat`` / ``nmod_mat`` objects.  Vectors are
treated as rows throughout (``v * A``), matching the right-module convention
used for representations.
"""
from __future__ import annotations

from fractions import Fraction
import random

import flint


class Field:
    """Ground field descriptor: the rationals (``p is None``) or F_p."""

    def __init__(self, p: int | None = None):
        if p is not None:
            if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
                raise ValueError(f"{p} is not prime")
        self.p = p

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip().lower()
        if text in ("q", "qq", "rational", "rationals"):
            return cls()
        if text.startswith("fp:"):
            return cls(int(text[3:]))
        raise ValueError(f"unknown field {text!r}; use 'q' or 'fp:<p>'")

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "q" if self.p is None else f"fp:{self.p}"

    # elements -----------------------------------------------------------
    def __call__(self, x):
        if self.p is None:
            if isinstance(x, flint.fmpq):
                return x
            if isinstance(x, Fraction):
                return flint.fmpq(x.numerator, x.denominator)
            if isinstance(x, str):
                f = Fraction(x)
                return flint.fmpq(f.numerator, f.denominator)
            return flint.fmpq(x)
        if isinstance(x, flint.nmod):
            return x
        if isinstance(x, (str, Fraction, flint.fmpq)):
            f = Fraction(str(x))
            return flint.nmod(f.numerator, self.p) / flint.nmod(f.denominator, self.p)
        return flint.nmod(int(x), self.p)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def fmt(self, x) -> str:
        return str(x) if self.p is None else str(int(x))

    # matrices -----------------------------------------------------------
    def matrix(self, rows, nrows: int | None = None, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        flat = [self(x) for r in rows for x in r]
        return self._make(nrows, ncols, flat)

    def _make(self, r, c, flat=None):
        if self.p is None:
            return flint.fmpq_mat(r, c, flat) if flat else flint.fmpq_mat(r, c)
        return flint.nmod_mat(r, c, flat or [0] * (r * c), self.p)

    def zeros(self, r: int, c: int):
        return self._make(r, c)

    def eye(self, n: int):
        m = self._make(n, n)
        one = self.one()
        for i in range(n):
            m[i, i] = one
        return m

    def random_element(self, rng: random.Random, bound: int = 97):
        return self(rng.randint(1, bound))


QQ = Field()


def field_of(m) -> Field:
    if isinstance(m, flint.nmod_mat):
        return Field(int(m.modulus()))
    return QQ


def shape(m):
    return m.nrows(), m.ncols()


def is_zero(m) -> bool:
    return not any(m.entries())


def _like(m, r: int, c: int, flat):
    return field_of(m)._make(r, c, flat)


def rref(m):
    """Return ``(R, pivots)`` with R in reduced row echelon form."""
    r, c = shape(m)
    if r == 0 or c == 0:
        return m, []
    R, rank = m.rref()
    pivots = []
    j = 0
    for i in range(rank):
        while R[i, j] == 0:
            j += 1
        pivots.append(j)
    return R, pivots


def rank(m) -> int:
    r, c = shape(m)
    if r == 0 or c == 0:
        return 0
    return m.rank()


def rows(m, idx):
    idx = list(idx)
    c = m.ncols()
    e = m.entries()
    flat = []
    for i in idx:
        flat.extend(e[i * c:(i + 1) * c])
    return _like(m, len(idx), c, flat)


def cols(m, idx):
    idx = list(idx)
    c = m.ncols()
    e = m.entries()
    flat = [e[i * c + j] for i in range(m.nrows()) for j in idx]
    return _like(m, m.nrows(), len(idx), flat)


def submatrix(m, ridx, cidx):
    return cols(rows(m, ridx), cidx)


def vstack(blocks, ncols: int | None = None, field: Field | None = None):
    blocks = [b for b in blocks if b is not None]
    if ncols is None:
        ncols = blocks[0].ncols()
    F = field or field_of(blocks[0])
    flat = []
    n = 0
    for b in blocks:
        if b.nrows() == 0:
            continue
        if b.ncols() != ncols:
            raise ValueError("column counts differ")
        flat.extend(b.entries())
        n += b.nrows()
    return F._make(n, ncols, flat)


def hstack(blocks, nrows: int | None = None, field: Field | None = None):
    blocks = [b for b in blocks if b is not None]
    F = field or field_of(blocks[0])
    if nrows is None:
        nrows = blocks[0].nrows()
    lists = [(b.entries(), b.ncols()) for b in blocks if b.ncols()]
    flat = []
    for i in range(nrows):
        for e, c in lists:
            flat.extend(e[i * c:(i + 1) * c])
    return F._make(nrows, sum(c for _, c in lists), flat)


def block_diag(blocks, field: Field):
    r = sum(b.nrows() for b in blocks)
    c = sum(b.ncols() for b in blocks)
    zero = field(0)
    flat = []
    c0 = 0
    for b in blocks:
        e, bc = b.entries(), b.ncols()
        left, right = [zero] * c0, [zero] * (c - c0 - bc)
        for i in range(b.nrows()):
            flat.extend(left)
            flat.extend(e[i * bc:(i + 1) * bc])
            flat.extend(right)
        c0 += bc
    return field._make(r, c, flat)


def row_space(m):
    """Basis (as rows, in RREF) of the row space of m."""
    R, piv = rref(m)
    return rows(R, range(len(piv)))


def null_space(m):
    """Rows x with ``m * x^T = 0`` (right kernel), as a matrix of basis rows."""
    F = field_of(m)
    r, c = shape(m)
    if c == 0:
        return F.zeros(0, 0)
    R, piv = rref(m)
    free = [j for j in range(c) if j not in set(piv)]
    out = F.zeros(len(free), c)
    one = F.one()
    for a, f in enumerate(free):
        out[a, f] = one
        for i, p in enumerate(piv):
            out[a, p] = -R[i, f]
    return out


def left_kernel(m):
    """Rows v with ``v * m = 0``."""
    r, c = shape(m)
    F = field_of(m)
    if c == 0:
        return F.eye(r)
    return null_space(m.transpose())


def solve_left(a, b):
    """Some x with ``x * a = b`` (b a matrix of rows), or None."""
    F = field_of(a)
    n, c = shape(a)
    k = b.nrows()
    if n == 0:
        return F.zeros(k, 0) if is_zero(b) else None
    # [a^T | b^T] column system
    aug = hstack([a.transpose(), b.transpose()], nrows=c, field=F)
    R, piv = rref(aug)
    if any(p >= n for p in piv):
        return None
    x = F.zeros(k, n)
    for i, p in enumerate(piv):
        for j in range(k):
            x[j, p] = R[i, n + j]
    return x


def in_row_space(m, v) -> bool:
    if m.nrows() == 0:
        return is_zero(v)
    return rank(vstack([m, v])) == rank(m)


def complement_rows(sub, ambient_dim: int, field: Field):
    """Standard basis rows completing the row space of ``sub`` to the ambient space."""
    if sub.nrows() == 0:
        return field.eye(ambient_dim), list(range(ambient_dim))
    R, piv = rref(sub)
    chosen = [j for j in range(ambient_dim) if j not in set(piv)]
    out = field.zeros(len(chosen), ambient_dim)
    for a, j in enumerate(chosen):
        out[a, j] = field.one()
    return out, chosen


def coordinates(basis_rows, v):
    """Coordinates of row(s) v in the (independent) rows of basis_rows."""
    x = solve_left(basis_rows, v)
    if x is None:
        raise ValueError("vector not in span")
    return x


def to_lists(m):
    return [[m[i, j] for j in range(m.ncols())] for i in range(m.nrows())]


def charpoly_factors(m):
    """Factorisation of the characteristic polynomial: list of (poly, multiplicity)."""
    _, facs = m.charpoly().factor()
    return facs


def poly_eval(poly, m):
    """Evaluate a flint polynomial at a square matrix (Horner)."""
    F = field_of(m)
    n = m.nrows()
    coeffs = poly.coeffs()
    out = F.zeros(n, n)
    eye = F.eye(n)
    for c in reversed(coeffs):
        out = out * m + eye * F(c)
    return out
