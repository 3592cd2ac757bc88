"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`, which already keeps the
denominator positive and the fraction reduced. Matrices are small (a few
dozen columns at most), so everything is dense tuples of Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(x)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (q nonzero) into a reduced Fraction."""
    text = str(text).strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    num, sep, den = text.partition("/")
    if not sep:
        return Fraction(int(num))
    return Fraction(int(num), int(den))


def format_rational(x: Fraction) -> str:
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vector(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


@dataclass(frozen=True)
class RationalMatrix:
    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError("row data does not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "RationalMatrix":
        rows = tuple(vector(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "RationalMatrix":
        columns = [vector(c) for c in columns]
        rows = tuple(tuple(c[i] for c in columns) for i in range(nrows))
        return cls(nrows, len(columns), rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls(nrows, ncols, tuple((Fraction(0),) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def entries(self) -> tuple:
        """Row-major flat sequence of entries."""
        return tuple(x for r in self.rows for x in r)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.ncols, self.nrows, tuple(zip(*self.rows)) if self.nrows else
                              tuple(() for _ in range(self.ncols)))

    def submatrix_columns(self, cols: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix(self.nrows, len(cols), tuple(tuple(r[j] for j in cols) for r in self.rows))

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in self.rows)


def _rref_rows(rows: list, ncols: int):
    """In-place Gauss-Jordan elimination on a list of mutable rows."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            for k in range(c, ncols):
                if prow[k]:
                    prow[k] *= inv
        nz = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for k in nz:
                        row[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: RationalMatrix):
    """Return ``(R, pivots, rank)`` with R the reduced row echelon form of m."""
    rows = [list(r) for r in m.rows]
    pivots = _rref_rows(rows, m.ncols)
    return RationalMatrix(m.nrows, m.ncols, tuple(tuple(r) for r in rows)), tuple(pivots), len(pivots)


def rank(m: RationalMatrix) -> int:
    return rref(m)[2]


def rank_of_vectors(vectors: Sequence[Sequence], dim: int) -> int:
    rows = [list(vector(v)) for v in vectors]
    return len(_rref_rows(rows, dim))


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of Q^ambient_dim stored as its (unique) RREF basis.

    Two SubspaceBasis values describe the same subspace iff they compare
    equal.
    """

    ambient_dim: int
    vectors: tuple
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __contains__(self, v) -> bool:
        return span_contains(self, v)

    def as_matrix(self) -> RationalMatrix:
        return RationalMatrix(len(self.vectors), self.ambient_dim, self.vectors)


def span(vectors: Iterable[Sequence], ambient_dim: int) -> SubspaceBasis:
    """Canonical basis of the span of ``vectors``."""
    rows = [list(vector(v)) for v in vectors]
    if any(len(r) != ambient_dim for r in rows):
        raise ValueError("vector length differs from ambient dimension")
    pivots = _rref_rows(rows, ambient_dim)
    return SubspaceBasis(ambient_dim, tuple(tuple(r) for r in rows[: len(pivots)]), tuple(pivots))


def kernel_basis(m: RationalMatrix) -> SubspaceBasis:
    """Basis of ``{v : m v = 0}`` in canonical RREF form."""
    red, pivots, _ = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivset]
    vecs = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, p in zip(red.rows, pivots):
            v[p] = -row[f]
        vecs.append(v)
    # The free-variable basis is not in RREF; canonicalise it.
    return span(vecs, m.ncols)


def reduce_against(basis: SubspaceBasis, v: Sequence) -> list:
    """Residual of v after eliminating every pivot coordinate of ``basis``."""
    v = list(vector(v))
    for b, p in zip(basis.vectors, basis.pivots):
        c = v[p]
        if c:
            for k in range(p, basis.ambient_dim):
                if b[k]:
                    v[k] -= c * b[k]
    return v


def span_contains(basis: SubspaceBasis, v: Sequence) -> bool:
    if len(v) != basis.ambient_dim:
        raise ValueError("vector length differs from ambient dimension")
    return not any(reduce_against(basis, v))


def coordinates(basis: SubspaceBasis, v: Sequence):
    """Coefficients expressing v in ``basis``, or None when v is outside it."""
    if not span_contains(basis, v):
        return None
    # The RREF basis has an identity block on the pivot columns.
    return tuple(as_fraction(v[p]) for p in basis.pivots)


def orthogonal_complement(basis: SubspaceBasis) -> SubspaceBasis:
    """``{w : <w, b> = 0 for all b in basis}``."""
    if not basis.vectors:
        return span([tuple(Fraction(int(i == j)) for j in range(basis.ambient_dim))
                     for i in range(basis.ambient_dim)], basis.ambient_dim)
    return kernel_basis(basis.as_matrix())
