"""Dense matrices over GF(q).

Vectors multiply matrices from the left (``x @ A``), the layout used by
every encoder in this package: a codeword is ``(message, keys) @ G``.
Elimination pivots on the first nonzero entry of each column, so failures
are reproducible.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    DuplicateAlpha,
    IndexOutOfBounds,
    InconsistentSystem,
    ModulusMismatch,
    SingularMatrix,
    SingularSystem,
    ZeroAlpha,
)
from .gf import FieldElement, check_prime, inv_int


@dataclass(frozen=True)
class FieldMatrix:
    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise DimensionMismatch(f"data does not have shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], q: int, cols: int | None = None) -> FieldMatrix:
        data = tuple(tuple(v % q for v in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data, q)

    @classmethod
    def identity(cls, size: int, q: int) -> FieldMatrix:
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)], q, size)

    @classmethod
    def zeros(cls, rows: int, cols: int, q: int) -> FieldMatrix:
        return cls.from_rows([[0] * cols for _ in range(rows)], q, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> FieldElement:
        i, j = ij
        return FieldElement(self.data[i][j], self.modulus)

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def transpose(self) -> FieldMatrix:
        data = tuple(tuple(r[j] for r in self.data) for j in range(self.cols))
        return FieldMatrix(self.cols, self.rows, data, self.modulus)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def __matmul__(self, other: FieldMatrix) -> FieldMatrix:
        return matmul(self, other)

    def __str__(self) -> str:
        width = len(str(self.modulus - 1))
        return "\n".join(" ".join(f"{v:>{width}}" for v in r) for r in self.data)


def vandermonde(alphas: Sequence[int | FieldElement], rows: int, q: int | None = None) -> FieldMatrix:
    """Matrix with entry ``(i, j) = alphas[j] ** i`` for ``i = 0..rows-1``."""
    if q is None:
        if not alphas or not isinstance(alphas[0], FieldElement):
            raise ValueError("modulus required for integer alphas")
        q = alphas[0].modulus
    vals = []
    for a in alphas:
        if isinstance(a, FieldElement):
            if a.modulus != q:
                raise ModulusMismatch("alphas from different fields")
            a = a.value
        vals.append(a % q)
    if any(v == 0 for v in vals):
        raise ZeroAlpha("Vandermonde points must be nonzero")
    if len(set(vals)) != len(vals):
        raise DuplicateAlpha("Vandermonde points must be distinct")
    return FieldMatrix.from_rows([[pow(a, i, q) for a in vals] for i in range(rows)], q, len(vals))


def vec_mat(x: Sequence[int], a: FieldMatrix) -> list[int]:
    """Row vector times matrix, on raw residues."""
    if len(x) != a.rows:
        raise DimensionMismatch(f"vector of length {len(x)} against {a.rows} rows")
    q = a.modulus
    out = [0] * a.cols
    for xi, row in zip(x, a.data):
        if xi:
            for j, v in enumerate(row):
                out[j] += xi * v
    return [v % q for v in out]


def matmul(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    if a.modulus != b.modulus:
        raise ModulusMismatch(f"GF({a.modulus}) vs GF({b.modulus})")
    if a.cols != b.rows:
        raise DimensionMismatch(f"{a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    if b.rows == 0:
        return FieldMatrix.zeros(a.rows, b.cols, a.modulus)
    return FieldMatrix(a.rows, b.cols, tuple(tuple(vec_mat(r, b)) for r in a.data), a.modulus)


def submatrix(a: FieldMatrix, row_set: Sequence[int], col_set: Sequence[int]) -> FieldMatrix:
    """Order-preserving selection of rows and columns (0-indexed)."""
    for i in row_set:
        if not 0 <= i < a.rows:
            raise IndexOutOfBounds(f"row {i} outside 0..{a.rows - 1}")
    for j in col_set:
        if not 0 <= j < a.cols:
            raise IndexOutOfBounds(f"column {j} outside 0..{a.cols - 1}")
    data = tuple(tuple(a.data[i][j] for j in col_set) for i in row_set)
    return FieldMatrix(len(row_set), len(col_set), data, a.modulus)


def hstack(blocks: Sequence[FieldMatrix]) -> FieldMatrix:
    q = blocks[0].modulus
    rows = blocks[0].rows
    if any(b.rows != rows or b.modulus != q for b in blocks):
        raise DimensionMismatch("blocks disagree on row count or field")
    data = tuple(sum((b.data[i] for b in blocks), ()) for i in range(rows))
    return FieldMatrix(rows, sum(b.cols for b in blocks), data, q)


def _eliminate(rows: list[list[int]], ncols: int, q: int) -> list[int]:
    """In-place Gauss-Jordan on the first ``ncols`` columns; returns pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        s = inv_int(rows[r][c], q)
        pr = rows[r] = [v * s % q for v in rows[r]]
        for i, row in enumerate(rows):
            f = row[c]
            if i != r and f:
                rows[i] = [(v - f * w) % q for v, w in zip(row, pr)]
        pivots.append(c)
        r += 1
    return pivots


def rank(a: FieldMatrix) -> int:
    if a.rows == 0 or a.cols == 0:
        return 0
    return len(_eliminate([list(r) for r in a.data], a.cols, a.modulus))


def invert(a: FieldMatrix) -> FieldMatrix:
    if a.rows != a.cols:
        raise DimensionMismatch(f"cannot invert a {a.rows}x{a.cols} matrix")
    n, q = a.rows, a.modulus
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(a.data)]
    if len(_eliminate(aug, n, q)) < n:
        raise SingularMatrix("matrix is singular")
    return FieldMatrix(n, n, tuple(tuple(r[n:]) for r in aug), q)


def solve_right(a: FieldMatrix, y: Sequence[int]) -> list[int]:
    """Find ``x`` with ``x @ a == y`` for a matrix of full row rank.

    Extra columns (an overdetermined system) are allowed and are checked for
    consistency.
    """
    if len(y) != a.cols:
        raise DimensionMismatch(f"target of length {len(y)} against {a.cols} columns")
    q = a.modulus
    # transpose: one equation per column of a
    aug = [[a.data[i][j] for i in range(a.rows)] + [y[j] % q] for j in range(a.cols)]
    pivots = _eliminate(aug, a.rows, q)
    if len(pivots) < a.rows:
        raise SingularSystem(f"rank {len(pivots)} < {a.rows} unknowns")
    if any(row[-1] for row in aug[a.rows:]):
        raise InconsistentSystem("no solution satisfies every equation")
    return [aug[i][-1] for i in range(a.rows)]
