"""
Invariants of the diagonal action on the Grassmannian.

Laurent monomials in the Pluecker coordinates are invariant exactly when
their exponent vector lies in the integer left kernel of the incidence
matrix W (k-subsets against points). Algebraic independence among such
invariants is decided with the Jacobian criterion, evaluated at random
points of the Grassmannian over a large prime field.
"""

import itertools
import logging
import random
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from ..algebra.field import PrimeField, make_field
from ..algebra.lattice import IntMatrix, int_left_kernel
from ..algebra.matrix import FqMatrix, minor
from ..errors import BadParams, DimensionMismatch, MultisetMismatch, SamplingExhausted
from ..geometry.grassmann import PluckerVector, Subset, SubsetIndexer, plucker_relations, subsets_lex
from ..settings import DEFAULT_SETTINGS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExponentVector:
    """Exponents v of the Laurent monomial prod_r p_r^v_r."""
    indexer: SubsetIndexer
    exps: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'exps', tuple(int(e) for e in self.exps))
        if len(self.exps) != len(self.indexer):
            raise DimensionMismatch(f"{len(self.exps)} exponents for C({self.indexer.n},{self.indexer.k})")

    @classmethod
    def zero(cls, indexer: SubsetIndexer) -> "ExponentVector":
        return cls(indexer, (0,) * len(indexer))

    def _check(self, other: "ExponentVector"):
        if self.indexer != other.indexer:
            raise DimensionMismatch("Exponent vectors over different Grassmannians")

    def __add__(self, other: "ExponentVector") -> "ExponentVector":
        self._check(other)
        return ExponentVector(self.indexer, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __sub__(self, other: "ExponentVector") -> "ExponentVector":
        self._check(other)
        return ExponentVector(self.indexer, tuple(a - b for a, b in zip(self.exps, other.exps)))

    def __neg__(self) -> "ExponentVector":
        return ExponentVector(self.indexer, tuple(-a for a in self.exps))

    def scale(self, m: int) -> "ExponentVector":
        return ExponentVector(self.indexer, tuple(m * a for a in self.exps))

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(r for r, e in enumerate(self.exps) if e)

    @property
    def numerator(self) -> Tuple[Tuple[int, int], ...]:
        """(rank, exponent) pairs with positive exponent."""
        return tuple((r, e) for r, e in enumerate(self.exps) if e > 0)

    @property
    def denominator(self) -> Tuple[Tuple[int, int], ...]:
        """(rank, -exponent) pairs for negative exponents."""
        return tuple((r, -e) for r, e in enumerate(self.exps) if e < 0)

    def is_invariant(self) -> bool:
        """v . W = 0"""
        totals = [0] * self.indexer.n
        for subset, e in zip(self.indexer.table, self.exps):
            for i in subset:
                totals[i - 1] += e
        return not any(totals)

    def describe(self) -> str:
        def product(parts):
            return "*".join(self.indexer.label(r) + (f"^{e}" if e > 1 else "") for r, e in parts)

        num, den = product(self.numerator) or "1", product(self.denominator)
        if not den:
            return num
        return f"{num}/({den})" if len(self.denominator) > 1 or "^" in den else f"{num}/{den}"


@dataclass(frozen=True)
class PairInvariant:
    """p_I1 p_J1 / (p_I2 p_J2) with I1+J1 = I2+J2 as multisets."""
    I1: Subset
    J1: Subset
    I2: Subset
    J2: Subset

    def __post_init__(self):
        for name in ('I1', 'J1', 'I2', 'J2'):
            object.__setattr__(self, name, tuple(sorted(getattr(self, name))))
        if sorted(self.I1 + self.J1) != sorted(self.I2 + self.J2):
            raise MultisetMismatch(f"{self.I1}+{self.J1} differs from {self.I2}+{self.J2}")
        if sorted([self.I1, self.J1]) == sorted([self.I2, self.J2]):
            raise BadParams("Pair invariant with identical numerator and denominator")

    def exponent_vector(self, n: int) -> ExponentVector:
        return pair_invariant(self.I1, self.J1, self.I2, self.J2, n=n)

    def as_lists(self) -> List[List[int]]:
        return [list(self.I1), list(self.J1), list(self.I2), list(self.J2)]


@dataclass(frozen=True)
class DifferentialRow:
    """An evaluated differential, one entry per Pluecker coordinate."""
    values: Tuple[int, ...]


@dataclass
class JacobianReport:
    """Outcome of jacobian_select at every evaluation point."""
    selected: List[int]
    relation_rank: int
    per_point: List[Tuple[int, ...]]

    @property
    def unanimous(self) -> bool:
        return len(set(self.per_point)) <= 1

    def status(self, index: int) -> str:
        return "independent (probabilistic)" if index in self.selected else "not selected"


def build_W(n: int, k: int) -> IntMatrix:
    """C(n,k) x n incidence matrix; row I is the indicator of I."""
    if not 1 <= k <= n:
        raise BadParams(f"Need 1 <= k <= n, got n={n}, k={k}")
    indexer = subsets_lex(n, k)
    return IntMatrix.from_rows([
        [1 if j in subset else 0 for j in range(1, n + 1)] for subset in indexer.table
    ])


def incidence_rank(n: int, k: int) -> int:
    """Closed-form rank of W_{k,n}."""
    if k == 0:
        return 0
    return 1 if k == n else n


def predicted_generator_count(n: int, k: int) -> int:
    """Transcendence degree k(n-k) - n + 1 of the invariant field."""
    if not 1 <= k <= n - 1:
        raise BadParams(f"Need 1 <= k <= n-1, got n={n}, k={k}")
    return k * (n - k) - n + 1


def kernel_invariants(n: int, k: int) -> List[ExponentVector]:
    """HNF basis of the integer left kernel of W_{k,n}."""
    if not 1 <= k <= n - 1:
        raise BadParams(f"Need 1 <= k <= n-1, got n={n}, k={k}")
    indexer = subsets_lex(n, k)
    basis = [ExponentVector(indexer, row) for row in int_left_kernel(build_W(n, k))]
    logger.debug(f"Left kernel of W_{{{k},{n}}}: {len(basis)} basis vectors "
                 f"(expected {len(indexer) - incidence_rank(n, k)})")
    return basis


def laurent_eval(v: ExponentVector, p: PluckerVector) -> Optional[int]:
    """Value of prod p_r^v_r in F_q, or None when a negative power hits a zero."""
    if v.indexer != p.indexer:
        raise DimensionMismatch("Exponent vector and Pluecker vector index different Grassmannians")
    q = p.field.q
    num, den = 1, 1
    for x, e in zip(p.coords, v.exps):
        if e > 0:
            num = num * pow(x, e, q) % q
        elif e < 0:
            if x == 0:
                return None
            den = den * pow(x, -e, q) % q
    return num * pow(den, -1, q) % q


def pair_invariant(I1: Sequence[int], J1: Sequence[int], I2: Sequence[int], J2: Sequence[int],
                   n: Optional[int] = None) -> ExponentVector:
    """
    Exponent vector with +1 at I1, J1 and -1 at I2, J2.

    n defaults to the largest index that occurs.
    """
    subsets = [tuple(sorted(s)) for s in (I1, J1, I2, J2)]
    if sorted(subsets[0] + subsets[1]) != sorted(subsets[2] + subsets[3]):
        raise MultisetMismatch(f"{subsets[0]}+{subsets[1]} differs from {subsets[2]}+{subsets[3]}")
    if len({len(s) for s in subsets}) != 1:
        raise MultisetMismatch("Subsets of different sizes")
    if n is None:
        n = max(max(s) for s in subsets if s)
    indexer = subsets_lex(n, len(subsets[0]))
    exps = [0] * len(indexer)
    for subset, sign in zip(subsets, (1, 1, -1, -1)):
        exps[indexer.rank(subset)] += sign
    return ExponentVector(indexer, tuple(exps))


def iter_pair_invariants(n: int, k: int) -> Iterator[PairInvariant]:
    """Pair invariants grouped by the 2k-multiset key, in first-seen key order."""
    if not 1 <= k <= n - 1:
        raise BadParams(f"Need 1 <= k <= n-1, got n={n}, k={k}")
    groups: Dict[Tuple[int, ...], List[Tuple[Subset, Subset]]] = {}
    for A, B in itertools.combinations_with_replacement(subsets_lex(n, k).table, 2):
        groups.setdefault(tuple(sorted(A + B)), []).append((A, B))
    for pairs in groups.values():
        for (I1, J1), (I2, J2) in itertools.combinations(pairs, 2):
            yield PairInvariant(I1, J1, I2, J2)


def enumerate_pair_invariants(n: int, k: int, limit: Optional[int] = None) -> List[PairInvariant]:
    return list(itertools.islice(iter_pair_invariants(n, k), limit))


class JacobianEvaluator:
    """Evaluates relation and candidate differentials at random points of Gr(k, n)."""

    def __init__(self, n: int, k: int, seed: Union[int, random.Random] = DEFAULT_SETTINGS.seed,
                 prime: int = DEFAULT_SETTINGS.evaluation_prime,
                 trials: int = DEFAULT_SETTINGS.jacobian_trials):
        self.n = n
        self.k = k
        self.field: PrimeField = make_field(prime)
        self.indexer = subsets_lex(n, k)
        self.relations = plucker_relations(n, k)
        self.trials = trials
        self.rng = seed if isinstance(seed, random.Random) else random.Random(seed)
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")

    def sample_point(self, required: Sequence[int] = ()) -> Tuple[int, ...]:
        """Pluecker coordinates of a random code, nonzero on every required rank."""
        p = self.field.q
        for attempt in range(self.trials):
            gen = FqMatrix.from_rows(self.field, [
                [self.rng.randrange(p) for _ in range(self.n)] for _ in range(self.k)
            ])
            coords = tuple(minor(gen, s) for s in self.indexer.table)
            if any(coords) and all(coords[r] for r in required):
                return coords
            self.logger.debug(f"Point {attempt + 1} vanishes on a required coordinate, resampling")
        raise SamplingExhausted(f"No usable point on Gr({self.k},{self.n}) in {self.trials} trials")

    def relation_rows(self, coords: Sequence[int]) -> List[DifferentialRow]:
        p = self.field.q
        return [DifferentialRow(tuple(rel.gradient(coords, p))) for rel in self.relations]

    def candidate_row(self, v: ExponentVector, coords: Sequence[int]) -> DifferentialRow:
        # logarithmic derivative: df_v / f_v = sum_r v_r / p_r dp_r
        p = self.field.q
        return DifferentialRow(tuple(
            e * pow(x, -1, p) % p if e else 0 for e, x in zip(v.exps, coords)
        ))

    def select_at_point(self, cands: Sequence[ExponentVector],
                        coords: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
        """Relation rank and the greedily kept candidate indices at one point."""
        basis = _EchelonBasis(self.field.q)
        for row in self.relation_rows(coords):
            basis.insert(row.values)
        relation_rank = len(basis)
        kept = tuple(i for i, v in enumerate(cands) if basis.insert(self.candidate_row(v, coords).values))
        return relation_rank, kept


class _EchelonBasis:
    """Incrementally maintained row echelon basis over F_p."""

    def __init__(self, p: int):
        self.p = p
        self.rows: List[Tuple[int, List[int]]] = []

    def __len__(self):
        return len(self.rows)

    def insert(self, values: Sequence[int]) -> bool:
        """Add the row if it raises the rank; report whether it did."""
        p = self.p
        row = list(values)
        for pivot, basis_row in self.rows:
            factor = row[pivot]
            if factor:
                row = [(a - factor * b) % p for a, b in zip(row, basis_row)]
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            return False
        scale = pow(row[lead], -1, p)
        self.rows.append((lead, [x * scale % p for x in row]))
        return True


def jacobian_report(cands: Sequence[ExponentVector], n: int, k: int,
                    trials: int = DEFAULT_SETTINGS.jacobian_trials,
                    seed: Union[int, random.Random] = DEFAULT_SETTINGS.seed,
                    points: int = DEFAULT_SETTINGS.jacobian_points,
                    prime: int = DEFAULT_SETTINGS.evaluation_prime) -> JacobianReport:
    indexer = subsets_lex(n, k)
    for v in cands:
        if v.indexer != indexer:
            raise DimensionMismatch(f"Candidate is not indexed by Gr({k},{n})")
    evaluator = JacobianEvaluator(n, k, seed=seed, prime=prime, trials=trials)
    required = sorted({r for v in cands for r in v.support})

    outcomes = []
    relation_ranks = []
    for point in range(points):
        coords = evaluator.sample_point(required)
        rank, kept = evaluator.select_at_point(cands, coords)
        evaluator.logger.debug(f"Point {point + 1}: relation rank {rank}, kept {kept}")
        relation_ranks.append(rank)
        outcomes.append(kept)

    counts = Counter(outcomes)
    # evaluation can only lose rank, so ties go to the larger selection
    best = max(counts, key=lambda kept: (counts[kept], len(kept)))
    if len(counts) > 1:
        logger.warning(f"Jacobian selections disagree across {points} points; keeping {best}")
    return JacobianReport(selected=list(best), relation_rank=max(relation_ranks), per_point=outcomes)


def jacobian_select(cands: Sequence[ExponentVector], n: int, k: int,
                    trials: int = DEFAULT_SETTINGS.jacobian_trials,
                    seed: Union[int, random.Random] = DEFAULT_SETTINGS.seed,
                    points: int = DEFAULT_SETTINGS.jacobian_points,
                    prime: int = DEFAULT_SETTINGS.evaluation_prime) -> List[ExponentVector]:
    """Greedy subsequence of cands that is algebraically independent modulo the relations."""
    if not cands:
        return []
    report = jacobian_report(cands, n, k, trials=trials, seed=seed, points=points, prime=prime)
    return [cands[i] for i in report.selected]


def relation_rank(n: int, k: int, seed: Union[int, random.Random] = DEFAULT_SETTINGS.seed,
                  prime: int = DEFAULT_SETTINGS.evaluation_prime) -> int:
    """Rank of the evaluated relation differentials at a random point."""
    evaluator = JacobianEvaluator(n, k, seed=seed, prime=prime)
    rank, _ = evaluator.select_at_point([], evaluator.sample_point())
    return rank


def invgen(n: int, k: int, seed: Union[int, random.Random] = DEFAULT_SETTINGS.seed,
           points: int = DEFAULT_SETTINGS.jacobian_points,
           trials: int = DEFAULT_SETTINGS.jacobian_trials,
           prime: int = DEFAULT_SETTINGS.evaluation_prime) -> List[ExponentVector]:
    """Minimal set of algebraically independent generators of the invariant field."""
    candidates = kernel_invariants(n, k)
    selected = jacobian_select(candidates, n, k, trials=trials, seed=seed, points=points, prime=prime)
    expected = predicted_generator_count(n, k)
    if len(selected) != expected:
        logger.warning(f"invgen({n},{k}) kept {len(selected)} generators, expected {expected}")
    else:
        logger.info(f"invgen({n},{k}): {len(selected)} of {len(candidates)} kernel invariants kept")
    return selected
