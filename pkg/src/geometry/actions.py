"""
Monomial, diagonal and permutation actions on codes and Pluecker vectors,
plus the diagonal-class test with witness recovery.

Convention: a monomial matrix is Q = D.P, and the permutation matrix of
images (s_1, ..., s_n) has P[k][j] = 1 iff j = s_k, so column j of G.P
is column s^-1(j) of G.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from ..algebra.field import PrimeField
from ..algebra.lattice import IntMatrix, SmithDecomposition, smith_normal_form
from ..algebra.matrix import FqMatrix, rref
from ..errors import BadParams, DimensionMismatch
from ..settings import DEFAULT_SETTINGS
from .grassmann import LinearCode, PluckerVector, plucker, subsets_lex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiagonalElement:
    """diag(lambda_1, ..., lambda_n) with nonzero entries."""
    field: PrimeField
    entries: Tuple[int, ...]

    def __post_init__(self):
        q = self.field.q
        object.__setattr__(self, 'entries', tuple(int(e) % q for e in self.entries))
        if any(e == 0 for e in self.entries):
            raise BadParams(f"Diagonal entries must be nonzero mod {q}: {self.entries}")

    @classmethod
    def ones(cls, field: PrimeField, n: int) -> "DiagonalElement":
        return cls(field, (1,) * n)

    @property
    def n(self) -> int:
        return len(self.entries)

    def matrix(self) -> FqMatrix:
        return FqMatrix.diagonal(self.field, self.entries)

    def scaled(self, c: int) -> "DiagonalElement":
        return DiagonalElement(self.field, tuple(e * c for e in self.entries))

    def is_scalar_multiple_of(self, other: "DiagonalElement") -> bool:
        if self.n != other.n:
            return False
        c = self.entries[0] * self.field.inv(other.entries[0])
        return other.scaled(c).entries == self.entries


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1, ..., n} given by its images."""
    images: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'images', tuple(int(i) for i in self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise BadParams(f"{self.images} is not a permutation of 1..{len(self.images)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for k, image in enumerate(self.images, start=1):
            inv[image - 1] = k
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """Permutation whose matrix is self.matrix() . other.matrix()."""
        if self.n != other.n:
            raise DimensionMismatch("Composing permutations of different sizes")
        return Permutation(tuple(other.images[image - 1] for image in self.images))

    def matrix(self, field: PrimeField) -> FqMatrix:
        n = self.n
        return FqMatrix.from_rows(field, [
            [1 if j + 1 == self.images[k] else 0 for j in range(n)] for k in range(n)
        ])

    def assignment(self) -> List[int]:
        """0/1 values of x_11, x_12, ..., x_nn (row-major) at this permutation."""
        n = self.n
        values = [0] * (n * n)
        for k, image in enumerate(self.images):
            values[k * n + image - 1] = 1
        return values

    def __str__(self):
        return "(" + ",".join(str(i) for i in self.images) + ")"


@dataclass(frozen=True)
class MonomialElement:
    """Q = D.P"""
    diag: DiagonalElement
    perm: Permutation

    def __post_init__(self):
        if self.diag.n != self.perm.n:
            raise DimensionMismatch("Diagonal and permutation sizes differ")

    def matrix(self) -> FqMatrix:
        return self.diag.matrix() @ self.perm.matrix(self.diag.field)

    def apply(self, C: LinearCode) -> LinearCode:
        return act_permutation(self.perm, act_diagonal(self.diag, C))


@dataclass(frozen=True)
class DiagonalClassResult:
    """Outcome of same_diagonal_class; witness is None for NotEquivalent."""
    witness: Optional[DiagonalElement]
    method: str
    heuristic: bool = False

    @property
    def equivalent(self) -> bool:
        return self.witness is not None

    def __bool__(self):
        return self.equivalent


def _check_length(n: int, C: LinearCode):
    if n != C.n:
        raise DimensionMismatch(f"Group element of size {n} acting on a code of length {C.n}")


def act_diagonal(lam: DiagonalElement, C: LinearCode) -> LinearCode:
    """Scale column i of the generator by lambda_i."""
    _check_length(lam.n, C)
    q = C.field.q
    rows = [[x * lam.entries[j] % q for j, x in enumerate(row)] for row in C.gen.data]
    return LinearCode.from_rows(C.field, rows)


def act_permutation(P: Permutation, C: LinearCode) -> LinearCode:
    """Generator G.P: column k of G moves to position s_k."""
    _check_length(P.n, C)
    inverse = P.inverse().images
    return LinearCode(C.field, C.gen.columns(inverse[j] - 1 for j in range(C.n)))


def act_diagonal_plucker(lam: DiagonalElement, p: PluckerVector) -> PluckerVector:
    if lam.n != p.indexer.n:
        raise DimensionMismatch(f"Diagonal of size {lam.n} on Gr({p.indexer.k},{p.indexer.n})")
    q = p.field.q
    coords = []
    for subset, x in zip(p.indexer.table, p.coords):
        for i in subset:
            x = x * lam.entries[i - 1] % q
        coords.append(x)
    return PluckerVector(p.indexer, p.field, tuple(coords))


def quotient_act(P: Permutation, C: LinearCode) -> LinearCode:
    """RREF(G.P), the class representative used by the harness."""
    return act_permutation(P, C).canonical()


def conjugate_to_left(lam: DiagonalElement, P: Permutation) -> DiagonalElement:
    """D with G.D.P = (G.P).diag(lam), i.e. D_i = lam_{s_i}."""
    if lam.n != P.n:
        raise DimensionMismatch("Diagonal and permutation sizes differ")
    return DiagonalElement(lam.field, tuple(lam.entries[image - 1] for image in P.images))


@lru_cache(maxsize=256)
def _support_system(n: int, k: int, support: Tuple[int, ...]) -> SmithDecomposition:
    # rows: indicator of I_r plus -1 for the projective scalar
    indexer = subsets_lex(n, k)
    rows = []
    for r in support:
        subset = indexer.table[r]
        rows.append([1 if i + 1 in subset else 0 for i in range(n)] + [-1])
    return smith_normal_form(IntMatrix.from_rows(rows))


def _normalize_witness(lam: Sequence[int], C: LinearCode) -> DiagonalElement:
    field = C.field
    zero_columns = {j for j in range(C.n) if not any(C.gen.column(j))}
    first = next((j for j in range(C.n) if j not in zero_columns), 0)
    scale = field.inv(lam[first])
    entries = tuple(1 if j in zero_columns else lam[j] * scale for j in range(C.n))
    return DiagonalElement(field, entries)


def _exhaustive_witness(Ca: LinearCode, Cb: LinearCode) -> Optional[DiagonalElement]:
    target = rref(Cb.gen)[0]
    field = Ca.field
    for tail in itertools.product(field.units(), repeat=Ca.n - 1):
        lam = DiagonalElement(field, (1,) + tail)
        if rref(act_diagonal(lam, Ca).gen)[0] == target:
            return _normalize_witness(lam.entries, Ca)
    return None


def same_diagonal_class(Ca: LinearCode, Cb: LinearCode,
                        exhaustive_limit: int = DEFAULT_SETTINGS.exhaustive_diagonal_limit
                        ) -> DiagonalClassResult:
    """
    Decide whether some diagonal lambda maps the row space of Ca onto Cb.

    Zero patterns of the Pluecker vectors must agree. On the common support
    the coordinate ratios pb_I / pa_I equal c * prod_{i in I} lambda_i, which
    becomes a linear system mod q-1 after taking discrete logarithms. Any
    candidate is verified by comparing RREFs. When the system has no
    solution the answer is confirmed by exhaustive search if (q-1)^n is at
    most exhaustive_limit; otherwise NotEquivalent is flagged heuristic.
    """
    if Ca.field != Cb.field or Ca.n != Cb.n or Ca.k != Cb.k:
        raise DimensionMismatch("Codes over different fields or of different shapes")
    field = Ca.field
    q, n = field.q, Ca.n

    if q == 2:
        ones = DiagonalElement.ones(field, n)
        if Ca.same_code(Cb):
            return DiagonalClassResult(ones, "trivial-group")
        return DiagonalClassResult(None, "trivial-group")

    pa, pb = plucker(Ca), plucker(Cb)
    support = pa.support
    if support != pb.support:
        return DiagonalClassResult(None, "zero-pattern")

    pa, pb = pa.scaled(field.inv(pa.coords[support[0]])), pb.scaled(field.inv(pb.coords[support[0]]))
    rhs = [field.dlog(pb.coords[r] * field.inv(pa.coords[r])) for r in support]
    solution = _support_system(n, Ca.k, support).solve_mod(rhs, q - 1)

    if solution is not None:
        lam = [field.exp(ell) for ell in solution[:n]]
        candidate = _normalize_witness(lam, Ca)
        if act_diagonal(candidate, Ca).same_code(Cb):
            return DiagonalClassResult(candidate, "dlog")
        logger.warning("Diagonal witness from the dlog system failed verification")

    if (q - 1) ** n <= exhaustive_limit:
        logger.debug(f"Confirming diagonal class exhaustively over {(q - 1) ** (n - 1)} candidates")
        witness = _exhaustive_witness(Ca, Cb)
        return DiagonalClassResult(witness, "exhaustive")

    return DiagonalClassResult(None, "dlog", heuristic=True)
