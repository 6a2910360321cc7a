"""Exact linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries. Matrices are
small (desk-scale derivation complexes), so a plain dense Gauss-Jordan
elimination is used throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "RatMatrix",
    "DimensionMismatch",
    "rref",
    "rank",
    "kernel_basis",
    "in_span",
    "matvec",
    "as_fraction",
]


class DimensionMismatch(ValueError):
    """Vectors or matrices of incompatible sizes were combined."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not allowed; use Fraction or int")
    return Fraction(x)


@dataclass(frozen=True)
class RatMatrix:
    """Dense rational matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative matrix size")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(as_fraction(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "RatMatrix":
        for c in columns:
            if len(c) != nrows:
                raise DimensionMismatch("column length differs from row count")
        return cls(nrows, len(columns), tuple(columns[j][i] for i in range(nrows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[Fraction]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_columns(self.to_rows(), self.cols) if self.rows else RatMatrix(self.cols, 0, ())

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                out.append(sum((r[k] * other[k, j] for k in range(self.cols) if r[k]), Fraction(0)))
        return RatMatrix(self.rows, other.cols, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    # deterministic pivoting: leftmost column with a nonzero entry, first such row
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        if inv != 1:
            rows[r] = pr = [e * inv for e in pr]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    rows[i] = [a - f * b if b else a for a, b in zip(ri, pr)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: RatMatrix) -> tuple[int, list[int], RatMatrix]:
    """Return ``(rank, pivot columns, reduced row-echelon form)``."""
    rows, pivots = _rref_rows(m.to_rows(), m.cols)
    return len(pivots), pivots, RatMatrix.from_rows(rows, m.cols) if rows else RatMatrix(0, m.cols, ())


def rank(m: RatMatrix) -> int:
    return rref(m)[0]


def kernel_basis(m: RatMatrix) -> list[list[Fraction]]:
    """Basis of the null space, one vector per free column (in column order)."""
    rows, pivots = _rref_rows(m.to_rows(), m.cols)
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rows[i][free]
        basis.append(v)
    return basis


def matvec(m: RatMatrix, v: Sequence) -> list[Fraction]:
    if len(v) != m.cols:
        raise DimensionMismatch(f"vector of length {len(v)} against {m.cols} columns")
    return [sum((a * b for a, b in zip(m.row(i), v) if a and b), Fraction(0)) for i in range(m.rows)]


def in_span(span: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Coefficients expressing ``target`` in ``span``, or ``None`` if not in the span.

    When the spanning vectors are dependent the returned coefficients are the
    ones with all free variables set to zero.
    """
    n = len(target)
    for v in span:
        if len(v) != n:
            raise DimensionMismatch(f"span vector of length {len(v)}, target of length {n}")
    k = len(span)
    aug = [[as_fraction(span[j][i]) for j in range(k)] + [as_fraction(target[i])] for i in range(n)]
    rows, pivots = _rref_rows(aug, k + 1)
    if pivots and pivots[-1] == k:
        return None
    coeffs = [Fraction(0)] * k
    for i, p in enumerate(pivots):
        coeffs[p] = rows[i][k]
    return coeffs


def independent_subset(vectors: Sequence[Sequence], start: Sequence[Sequence] = ()) -> list[int]:
    """Indices of ``vectors`` that are independent modulo ``start`` (greedy, in order)."""
    if not vectors:
        return []
    n = len(vectors[0])
    rows = [list(map(as_fraction, v)) for v in start]
    current = rank(RatMatrix.from_rows(rows, n)) if rows else 0
    chosen: list[int] = []
    for idx, v in enumerate(vectors):
        trial = rows + [list(map(as_fraction, v))]
        r = rank(RatMatrix.from_rows(trial, n))
        if r > current:
            chosen.append(idx)
            rows = trial
            current = r
    return chosen
