"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`; matrices are tuples of row
tuples.  Echelon forms used for subspace witnesses are computed fraction-free
on primitive integer rows so that the spanning vectors returned are
reproducible bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vector = tuple


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def vec_add(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vector(v) -> bool:
    return not any(v)


def primitive_integer_row(v: Sequence) -> list[int]:
    """Scale a rational vector to coprime integers, first nonzero entry positive."""
    den = 1
    for a in v:
        den = lcm(den, Fraction(a).denominator)
    row = [int(Fraction(a) * den) for a in v]
    g = 0
    for a in row:
        g = gcd(g, a)
    if g == 0:
        return row
    row = [a // g for a in row]
    for a in row:
        if a:
            if a < 0:
                row = [-b for b in row]
            break
    return row


def echelon_basis(vectors: Iterable[Sequence], ncols: int | None = None) -> list[Vector]:
    """Fraction-free row echelon form of the span of ``vectors``.

    Pivot rule: leftmost column having a nonzero entry, then the candidate row
    with the smallest absolute entry in that column (earliest row on ties).
    Rows are kept primitive; returned rows are integer-valued Fraction tuples.
    """
    rows = [primitive_integer_row(v) for v in vectors]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    rows = [r for r in rows if any(r)]
    basis: list[list[int]] = []
    col = 0
    while rows and col < ncols:
        best = None
        for idx, r in enumerate(rows):
            if r[col] and (best is None or abs(r[col]) < abs(rows[best][col])):
                best = idx
        if best is None:
            col += 1
            continue
        piv = rows.pop(best)
        if piv[col] < 0:
            piv = [-a for a in piv]
        nxt = []
        for r in rows:
            if r[col]:
                r = primitive_integer_row([piv[col] * a - r[col] * b for a, b in zip(r, piv)])
            if any(r):
                nxt.append(r)
        basis.append(piv)
        rows = nxt
        col += 1
    return [tuple(Fraction(a) for a in r) for r in basis]


def rank(vectors: Iterable[Sequence]) -> int:
    return len(echelon_basis(list(vectors)))


def reduce_against(basis: Sequence[Vector], v: Sequence) -> Vector:
    """Residual of ``v`` after eliminating the pivots of an echelon basis."""
    v = list(Fraction(a) for a in v)
    for row in basis:
        p = next(i for i, a in enumerate(row) if a)
        if v[p]:
            c = v[p] / row[p]
            v = [a - c * b for a, b in zip(v, row)]
    return tuple(v)


def in_span(basis: Sequence[Vector], v: Sequence) -> bool:
    return not any(reduce_against(basis, v))


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    m = [[Fraction(a) for a in row] for row in matrix]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of {v : matrix v = 0}."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    if not matrix:
        return [unit_vector(ncols, i) for i in range(ncols)]
    m, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(m, pivots):
            v[p] = -row[f]
        out.append(tuple(v))
    return out


@dataclass(frozen=True)
class LinearOperator:
    """Dense rows x cols matrix of rationals; column j is the image of basis vector j."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        ent = tuple(tuple(to_fraction(a) for a in row) for row in self.entries)
        if len(ent) != self.rows or any(len(r) != self.cols for r in ent):
            raise DimensionMismatch(f"expected {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "LinearOperator":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def from_columns(cls, columns, rows: int) -> "LinearOperator":
        columns = [tuple(c) for c in columns]
        return cls(rows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "LinearOperator":
        cols = rows if cols is None else cols
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "LinearOperator":
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def scalar(cls, n: int, c) -> "LinearOperator":
        c = to_fraction(c)
        return cls(n, n, tuple(vec_scale(c, unit_vector(n, i)) for i in range(n)))

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.rows}x{self.cols} operator")
        return tuple(sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in self.entries)

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        cols = [other.column(j) for j in range(other.cols)]
        return LinearOperator.from_columns([self.apply(c) for c in cols], self.rows)

    def _check_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("operator shapes differ")

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        self._check_shape(other)
        return LinearOperator(self.rows, self.cols, tuple(vec_add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        self._check_shape(other)
        return LinearOperator(self.rows, self.cols, tuple(vec_sub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "LinearOperator":
        return self.scaled(-1)

    def scaled(self, c) -> "LinearOperator":
        c = to_fraction(c)
        return LinearOperator(self.rows, self.cols, tuple(vec_scale(c, r) for r in self.entries))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def flat(self) -> Vector:
        return tuple(a for r in self.entries for a in r)

    def transpose(self) -> "LinearOperator":
        return LinearOperator.from_columns(self.entries, self.cols)

    def determinant(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square operator")
        m = [list(r) for r in self.entries]
        n = self.rows
        det = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c]), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = -det
            det *= m[c][c]
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] / m[c][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return det

    def inverse(self) -> "LinearOperator":
        n = self.rows
        if n != self.cols:
            raise DimensionMismatch("inverse of a non-square operator")
        aug = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(self.entries)]
        m, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("singular operator")
        return LinearOperator.from_rows([row[n:] for row in m[:n]], n)


def commutator(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    return a @ b - b @ a
