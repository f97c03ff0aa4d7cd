"""Exact rational numbers and small dense linear algebra.

Rationals are :class:`fractions.Fraction`, which is already canonical
(positive denominator, reduced, zero stored as 0/1).  Row reduction runs
fraction-free on integers and only divides by the pivot at the end.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "Matrix",
    "as_rational",
    "format_rational",
    "parse_rational",
    "rref",
    "rank",
    "nullspace",
    "span_basis",
    "span_equal",
]


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing to coerce {type(x).__name__} to an exact rational")
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimals and floats are rejected."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None
    if d == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Matrix:
    """Immutable dense matrix of rationals, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(as_rational(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def matvec(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((a * b for a, b in zip(self.row(i), v)), Fraction(0))
                for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(e) for e in r) + "]"
                         for r in self.to_rows())
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def _integer_rows(m: Matrix) -> list[list[int]]:
    # Row scaling leaves the row space, and hence the RREF, unchanged.
    out = []
    for i in range(m.rows):
        row = m.row(i)
        scale = lcm(*(e.denominator for e in row)) if row else 1
        out.append([int(e * scale) for e in row])
    return out


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns.

    Fraction-free Gauss-Jordan: every update ``(p*a - b*c) // prev`` is an
    exact integer division because the entries stay minors of the input.
    Pivot row is the first row at or below the current one with a nonzero
    entry in the column.
    """
    a = _integer_rows(m)
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        prow = a[r]
        for i in range(nrows):
            if i == r:
                continue
            f = a[i][c]
            a[i] = [(p * x - f * y) // prev for x, y in zip(a[i], prow)]
        prev = p
        pivots.append(c)
        r += 1
    out: list[Fraction] = []
    for i in range(nrows):
        if i < r:
            d = a[i][pivots[i]]
            out.extend(Fraction(x, d) for x in a[i])
        else:
            out.extend(Fraction(0) for _ in range(ncols))
    return Matrix(nrows, ncols, out), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix) -> list[list[Fraction]]:
    """Canonical kernel basis: one vector per free column, in column order."""
    r, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(v)
    return basis


def span_basis(vectors: Sequence[Sequence], dim: int | None = None) -> list[list[Fraction]]:
    """Nonzero rows of the RREF of the stacked vectors."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    if dim is None:
        dim = len(vectors[0])
    r, pivots = rref(Matrix.from_rows(vectors, dim))
    return [list(r.row(i)) for i in range(len(pivots))]


def span_equal(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    lengths = {len(v) for v in list(a) + list(b)}
    if len(lengths) > 1:
        raise ValueError("vectors of different lengths")
    return span_basis(a) == span_basis(b)
