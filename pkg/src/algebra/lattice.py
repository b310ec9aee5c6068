"""
Exact integer matrices: Hermite and Smith normal forms with unimodular
transforms, left kernels and linear congruence solving.

The normal forms come from sympy's DomainMatrix over ZZ; entries are
converted back to Python integers at the boundary.
"""

from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form as sympy_hermite_normal_form
from sympy.polys.matrices.normalforms import smith_normal_decomp

from ..errors import BadParams, DimensionMismatch

Rows = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class IntMatrix:
    """A rows x cols integer matrix."""
    rows: int
    cols: int
    data: Rows

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        width = len(data[0]) if data else (cols or 0)
        if any(len(r) != width for r in data):
            raise DimensionMismatch("Ragged rows")
        return cls(len(data), width, data)

    @classmethod
    def identity(cls, size: int) -> "IntMatrix":
        return cls(size, size, tuple(tuple(int(i == j) for j in range(size)) for i in range(size)))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(row[j] for row in self.data) for j in range(self.cols)))

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        other_cols = [tuple(row[j] for row in other.data) for j in range(other.cols)]
        return IntMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in other_cols) for row in self.data
        ))

    __matmul__ = matmul

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        """Matrix-vector product M.v"""
        if len(vector) != self.cols:
            raise DimensionMismatch(f"Vector of length {len(vector)} for {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.data)

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.data]


def _to_domain(M: IntMatrix) -> DomainMatrix:
    return DomainMatrix.from_list([list(row) for row in M.data], ZZ)


def _from_domain(dM: DomainMatrix) -> IntMatrix:
    rows, cols = dM.shape
    return IntMatrix(rows, cols, tuple(tuple(int(x) for x in row) for row in dM.to_list()))


def _is_zero(M: IntMatrix) -> bool:
    return not any(any(row) for row in M.data)


def _hermite_rows(M: IntMatrix) -> List[Tuple[int, ...]]:
    """
    Nonzero rows of the row-style Hermite form of M.

    sympy's Hermite form is column-style with pivots pushed right, so it is
    taken of M with its columns reversed and transposed, then flipped back:
    leading entries positive, columns increasing, entries above each
    leading entry reduced into [0, lead).
    """
    if _is_zero(M):
        return []
    reversed_cols = [[M.data[i][M.cols - 1 - c] for i in range(M.rows)] for c in range(M.cols)]
    W = _from_domain(sympy_hermite_normal_form(DomainMatrix.from_list(reversed_cols, ZZ))).data
    r = len(W[0])
    return [tuple(W[M.cols - 1 - c][r - 1 - j] for c in range(M.cols)) for j in range(r)]


@dataclass(frozen=True)
class SmithDecomposition:
    """U.M.V = diag(diagonal) with U and V unimodular."""
    diagonal: Tuple[int, ...]
    U: IntMatrix
    V: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def solve_mod(self, b: Sequence[int], m: int) -> Optional[Tuple[int, ...]]:
        """One x with M.x = b (mod m), or None when no solution exists."""
        if m < 1:
            raise BadParams(f"Modulus must be positive, got {m}")
        if len(b) != self.U.cols:
            raise DimensionMismatch(f"Right-hand side of length {len(b)} for {self.U.cols} equations")
        c = self.U.apply(b)
        y = [0] * self.V.rows
        for i, ci in enumerate(c):
            d = self.diagonal[i] if i < len(self.diagonal) else 0
            g = gcd(d, m)
            if ci % g:
                return None
            if d == 0:
                continue
            reduced_m = m // g
            if reduced_m > 1:
                y[i] = (ci // g) * pow((d // g) % reduced_m, -1, reduced_m) % reduced_m
        return tuple(v % m for v in self.V.apply(y))


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """
    Smith normal form with transforms.

    The diagonal is nonnegative, each entry divides the next and zeros
    come last.
    """
    smf, s, t = smith_normal_decomp(_to_domain(M))
    D = _from_domain(smf).data
    return SmithDecomposition(
        diagonal=tuple(D[i][i] for i in range(min(M.rows, M.cols))),
        U=_from_domain(s),
        V=_from_domain(t),
    )


def hermite_normal_form(M: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """
    Row-style Hermite normal form.

    Returns:
        (H, U) with U unimodular and U.M = H. Pivots of H are positive and
        entries above each pivot are reduced into [0, pivot). Zero rows
        are last.
    """
    basis = _hermite_rows(M)
    snf = smith_normal_form(M)
    U, V = snf.U.data, snf.V
    solutions = []
    for h in basis:
        # x.M = h  <=>  (x.U^-1).diag = h.V
        hV = IntMatrix.from_rows([h]).matmul(V).data[0]
        y = [hV[i] // snf.diagonal[i] if i < snf.rank else 0 for i in range(M.rows)]
        solutions.append([sum(y[i] * U[i][j] for i in range(M.rows)) for j in range(M.rows)])
    transform = solutions + [list(row) for row in U[snf.rank:]]
    H = basis + [(0,) * M.cols] * (M.rows - len(basis))
    return IntMatrix.from_rows(H, M.cols), IntMatrix.from_rows(transform, M.rows)


def int_rank(M: IntMatrix) -> int:
    """Rank over the rationals."""
    if _is_zero(M):
        return 0
    return _to_domain(M).convert_to(QQ).rank()


def int_left_kernel(M: IntMatrix) -> List[Tuple[int, ...]]:
    """
    Lattice basis of {x integer : x.M = 0}, returned in Hermite normal form.

    Rows of the left Smith transform beyond the rank span the whole left
    kernel.
    """
    snf = smith_normal_form(M)
    kernel_rows = snf.U.data[snf.rank:]
    if not kernel_rows:
        return []
    return _hermite_rows(IntMatrix.from_rows(kernel_rows))


def same_lattice(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    """True when two row sets span the same integer lattice."""
    ha = _hermite_rows(IntMatrix.from_rows(a)) if a else []
    hb = _hermite_rows(IntMatrix.from_rows(b)) if b else []
    return ha == hb


def solve_mod(A: IntMatrix, b: Sequence[int], m: int) -> Optional[Tuple[int, ...]]:
    """One solution x of A.x = b (mod m), or None (no solution)."""
    return smith_normal_form(A).solve_mod(b, m)
