"""
Linear codes as points of the Grassmannian Gr(k, n).

Subsets are 1-based sorted tuples and Pluecker coordinates follow the
lexicographic order of the k-subsets of {1, ..., n}.
"""

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

from ..algebra.field import PrimeField
from ..algebra.matrix import FqMatrix, minor, rref
from ..errors import BadIndex, BadParams, DimensionMismatch, RankDeficient, SamplingExhausted
from ..settings import DEFAULT_SETTINGS

logger = logging.getLogger(__name__)

Subset = Tuple[int, ...]


@dataclass(frozen=True)
class SubsetIndexer:
    """Lex-ordered table of the k-subsets of [n] with rank/unrank."""
    n: int
    k: int
    table: Tuple[Subset, ...] = field(compare=False, repr=False, default=())

    def __post_init__(self):
        if not self.table:
            object.__setattr__(self, 'table', tuple(itertools.combinations(range(1, self.n + 1), self.k)))

    def __len__(self):
        return len(self.table)

    def rank(self, subset: Sequence[int]) -> int:
        """0-based lex position of subset."""
        s = tuple(sorted(subset))
        if len(s) != self.k or len(set(s)) != self.k or (s and (s[0] < 1 or s[-1] > self.n)):
            raise BadIndex(f"{tuple(subset)} is not a {self.k}-subset of [{self.n}]")
        # colex rank of the mirrored subset, counted from the end
        mirrored = sorted(self.n - c for c in s)
        colex = sum(math.comb(c, j + 1) for j, c in enumerate(mirrored))
        return len(self.table) - 1 - colex

    def unrank(self, r: int) -> Subset:
        if not 0 <= r < len(self.table):
            raise BadIndex(f"Rank {r} out of range for C({self.n},{self.k})")
        return self.table[r]

    def label(self, r: int) -> str:
        subset = self.table[r]
        if self.n < 10:
            return "p" + "".join(str(i) for i in subset)
        return "p{" + ",".join(str(i) for i in subset) + "}"


@lru_cache(maxsize=None)
def subsets_lex(n: int, k: int) -> SubsetIndexer:
    if n < 0 or k < 0 or k > n:
        raise BadParams(f"Need 0 <= k <= n, got n={n}, k={k}")
    return SubsetIndexer(n, k)


@dataclass(frozen=True)
class LinearCode:
    """An [n, k] code over F_q given by a full-rank generator matrix."""
    field: PrimeField
    gen: FqMatrix

    def __post_init__(self):
        if self.gen.rows > self.gen.cols:
            raise BadParams(f"k={self.gen.rows} exceeds n={self.gen.cols}")
        if self.gen.rank() != self.gen.rows:
            raise RankDeficient(f"Generator matrix has rank below k={self.gen.rows}")

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Sequence[Sequence[int]]) -> "LinearCode":
        return cls(field, FqMatrix.from_rows(field, rows))

    @property
    def n(self) -> int:
        return self.gen.cols

    @property
    def k(self) -> int:
        return self.gen.rows

    def canonical(self) -> "LinearCode":
        """Same code with its generator in RREF."""
        return LinearCode(self.field, rref(self.gen)[0])

    def same_code(self, other: "LinearCode") -> bool:
        return rref(self.gen)[0] == rref(other.gen)[0]


@dataclass(frozen=True)
class PluckerVector:
    """Projective point of P^(C(n,k)-1) with coordinates in lex subset order."""
    indexer: SubsetIndexer
    field: PrimeField
    coords: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != len(self.indexer):
            raise DimensionMismatch(f"{len(self.coords)} coordinates for C({self.indexer.n},{self.indexer.k})")

    def __getitem__(self, subset: Sequence[int]) -> int:
        return self.coords[self.indexer.rank(subset)]

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(r for r, c in enumerate(self.coords) if c)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def scaled(self, c: int) -> "PluckerVector":
        q = self.field.q
        return PluckerVector(self.indexer, self.field, tuple(x * c % q for x in self.coords))

    def normalized(self) -> "PluckerVector":
        """Representative whose first nonzero coordinate is 1."""
        support = self.support
        if not support:
            return self
        return self.scaled(self.field.inv(self.coords[support[0]]))

    def projectively_equal(self, other: "PluckerVector") -> bool:
        if self.indexer != other.indexer or self.field != other.field:
            return False
        return self.normalized().coords == other.normalized().coords


@dataclass(frozen=True)
class RelationDescriptor:
    """
    One quadratic Pluecker relation sum(coeff * p_a * p_b) = 0.

    (I, J) is the (k-1, k+1) subset pair that generated it; terms carry
    0-based coordinate ranks with a <= b.
    """
    I: Subset
    J: Subset
    terms: Tuple[Tuple[int, int, int], ...]

    def evaluate(self, coords: Sequence[int], q: int) -> int:
        return sum(c * coords[a] * coords[b] for c, a, b in self.terms) % q

    def gradient(self, coords: Sequence[int], q: int) -> List[int]:
        row = [0] * len(coords)
        for c, a, b in self.terms:
            row[a] = (row[a] + c * coords[b]) % q
            row[b] = (row[b] + c * coords[a]) % q
        return row

    def describe(self, indexer: SubsetIndexer) -> str:
        parts = []
        for c, a, b in self.terms:
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(f"{sign} {mag}{indexer.label(a)}*{indexer.label(b)}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else text


def plucker(C: LinearCode) -> PluckerVector:
    """All k x k minors of the generator, in lex subset order."""
    indexer = subsets_lex(C.n, C.k)
    return PluckerVector(indexer, C.field, tuple(minor(C.gen, s) for s in indexer.table))


@lru_cache(maxsize=None)
def plucker_relations(n: int, k: int) -> Tuple[RelationDescriptor, ...]:
    """
    Distinct nontrivial quadratic relations, one per (I, J) class.

    For a (k-1)-subset I and a (k+1)-subset J the relation is
    sum_l (-1)^l p_{I+j_l} p_{J-j_l}, with p_{I+j_l} re-sorted.
    """
    indexer = subsets_lex(n, k)
    if k < 1 or k >= n:
        return ()
    relations: Dict[Tuple[Tuple[int, int, int], ...], RelationDescriptor] = {}
    for I in itertools.combinations(range(1, n + 1), k - 1):
        for J in itertools.combinations(range(1, n + 1), k + 1):
            collected: Dict[Tuple[int, int], int] = {}
            for l, j in enumerate(J, start=1):
                if j in I:
                    continue
                sort_sign = (-1) ** sum(1 for i in I if i > j)
                left = indexer.rank(I + (j,))
                right = indexer.rank(tuple(x for x in J if x != j))
                key = (min(left, right), max(left, right))
                collected[key] = collected.get(key, 0) + (-1) ** l * sort_sign
            terms = sorted(((c, a, b) for (a, b), c in collected.items() if c),
                           key=lambda t: (t[1], t[2]))
            if not terms:
                continue
            if terms[0][0] < 0:
                terms = [(-c, a, b) for c, a, b in terms]
            key = tuple(terms)
            if key not in relations:
                relations[key] = RelationDescriptor(I, J, key)
    logger.debug(f"Gr({k},{n}): {len(relations)} distinct quadratic relations")
    return tuple(relations.values())


def on_grassmannian(p: PluckerVector) -> bool:
    """True when p is nonzero and satisfies every quadratic relation."""
    if p.is_zero():
        return False
    q = p.field.q
    return all(rel.evaluate(p.coords, q) == 0
               for rel in plucker_relations(p.indexer.n, p.indexer.k))


def random_code(field: PrimeField, n: int, k: int,
                seed: Union[int, random.Random],
                trials: int = DEFAULT_SETTINGS.jacobian_trials) -> LinearCode:
    """Uniformly random full-rank k x n generator, deterministic per seed."""
    if n < 1 or k < 1 or k > n:
        raise BadParams(f"Need 1 <= k <= n, got n={n}, k={k}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for attempt in range(trials):
        rows = [[rng.randrange(field.q) for _ in range(n)] for _ in range(k)]
        gen = FqMatrix.from_rows(field, rows)
        if gen.rank() == k:
            return LinearCode(field, gen)
        logger.debug(f"random_code: attempt {attempt + 1} rank deficient, resampling")
    raise SamplingExhausted(f"No full-rank {k}x{n} matrix over F_{field.q} in {trials} trials")
