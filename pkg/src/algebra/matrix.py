"""
Dense matrices over a prime field.

Entries are canonical residues; every operation returns a new matrix.
Column subsets passed to minor() are 1-based, matching the subset tables
of the Grassmannian module.
"""

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from ..errors import BadIndex, DimensionMismatch, DivisionByZero, NonSquare
from .field import PrimeField

Rows = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class FqMatrix:
    """A rows x cols matrix over F_q."""
    field: PrimeField
    rows: int
    cols: int
    data: Rows

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Sequence[Sequence[int]]) -> "FqMatrix":
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("Ragged rows")
        q = field.q
        data = tuple(tuple(int(x) % q for x in r) for r in rows)
        return cls(field, len(data), width, data)

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> "FqMatrix":
        return cls(field, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: PrimeField, size: int) -> "FqMatrix":
        return cls(field, size, size, tuple(
            tuple(int(i == j) for j in range(size)) for i in range(size)
        ))

    @classmethod
    def diagonal(cls, field: PrimeField, entries: Sequence[int]) -> "FqMatrix":
        n = len(entries)
        return cls.from_rows(field, [
            [entries[i] if i == j else 0 for j in range(n)] for i in range(n)
        ])

    @property
    def entries(self) -> Tuple[int, ...]:
        """Row-major flattening."""
        return tuple(x for row in self.data for x in row)

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.data)

    def columns(self, indices: Iterable[int]) -> "FqMatrix":
        """Submatrix on the given 0-based columns, in the given order."""
        indices = list(indices)
        return FqMatrix(self.field, self.rows, len(indices),
                        tuple(tuple(row[j] for j in indices) for row in self.data))

    def transpose(self) -> "FqMatrix":
        return FqMatrix(self.field, self.cols, self.rows,
                        tuple(tuple(row[j] for row in self.data) for j in range(self.cols)))

    def matmul(self, other: "FqMatrix") -> "FqMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        q = self.field.q
        other_cols = [other.column(j) for j in range(other.cols)]
        return FqMatrix(self.field, self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(row, col)) % q for col in other_cols)
            for row in self.data
        ))

    __matmul__ = matmul

    def rref(self) -> Tuple["FqMatrix", Tuple[int, ...], int]:
        return rref(self)

    def rank(self) -> int:
        return rref(self)[2]

    def is_rref(self) -> bool:
        return rref(self)[0] == self

    def inverse(self) -> "FqMatrix":
        if self.rows != self.cols:
            raise NonSquare(f"Cannot invert a {self.rows}x{self.cols} matrix")
        n = self.rows
        augmented = FqMatrix.from_rows(self.field, [
            list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(self.data)
        ])
        reduced, pivots, _ = rref(augmented)
        if pivots[:n] != tuple(range(n)):
            raise DivisionByZero("Matrix is singular")
        return FqMatrix(self.field, n, n, tuple(row[n:] for row in reduced.data))

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.data]

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.data)


def rref(M: FqMatrix) -> Tuple[FqMatrix, Tuple[int, ...], int]:
    """
    Reduced row echelon form.

    Returns:
        (R, pivots, rank) with 0-based pivot columns
    """
    q = M.field.q
    rows = [list(r) for r in M.data]
    pivots: List[int] = []
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        pivot_row = next((i for i in range(r, M.rows) if rows[i][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        scale = pow(rows[r][c], -1, q)
        rows[r] = [x * scale % q for x in rows[r]]
        for i in range(M.rows):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [(x - factor * y) % q for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return FqMatrix(M.field, M.rows, M.cols, tuple(tuple(row) for row in rows)), tuple(pivots), r


def det(M: FqMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise NonSquare(f"Determinant of a {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return 1
    q = M.field.q
    a = [list(r) for r in M.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        prev_inv = pow(prev, -1, q)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) * prev_inv % q
        prev = a[k][k]
    return sign * a[n - 1][n - 1] % q


def minor(M: FqMatrix, subset: Sequence[int]) -> int:
    """Determinant of the square submatrix on the 1-based columns in subset."""
    subset = list(subset)
    if len(subset) != M.rows:
        raise BadIndex(f"Minor needs {M.rows} columns, got {len(subset)}")
    if any(c < 1 or c > M.cols for c in subset) or len(set(subset)) != len(subset):
        raise BadIndex(f"Invalid column subset {subset} for {M.cols} columns")
    return det(M.columns(c - 1 for c in subset))
