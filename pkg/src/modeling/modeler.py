"""
Algebraic model of code equivalence with a permutation matrix of unknowns.

For an invariant f = g/f' (numerator and denominator products of Pluecker
coordinates) defined on both codes, the forward equation

    h(X)  = g(G1 X)  - f'(G1 X)  * mu(G2)

and the transposed equation

    h'(X) = g(G2 X^T) - f'(G2 X^T) * mu(G1)

vanish at the secret permutation matrix. The unknown x_ij has index
(i-1)*n + (j-1).
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..algebra.matrix import FqMatrix, minor
from ..errors import (
    BadIndex, DimensionMismatch, ExpansionRefused, NoUsableInvariant, NotExpanded, UndefinedInvariant,
)
from ..geometry.grassmann import LinearCode, plucker
from ..invariants.engine import (
    ExponentVector, PairInvariant, invgen, iter_pair_invariants, laurent_eval,
)
from ..lce_instance import LceInstance
from ..settings import DEFAULT_SETTINGS
from .polynomial import LinearFormMatrix, SparsePoly

logger = logging.getLogger(__name__)


class EquationTag(str, Enum):
    FORWARD = "forward"
    TRANSPOSED = "transposed"
    ROW_SUM = "row-sum"
    COLUMN_SUM = "column-sum"
    ORTHOGONALITY = "orthogonality"
    FIELD = "field"


INVARIANT_TAGS = (EquationTag.FORWARD, EquationTag.TRANSPOSED)


def variable_index(n: int, i: int, j: int) -> int:
    """Index of x_ij for 1-based i, j."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise BadIndex(f"x_{i}{j} out of range for n={n}")
    return (i - 1) * n + (j - 1)


def assignment_matrix(values: Sequence[int], n: int) -> List[List[int]]:
    if len(values) != n * n:
        raise DimensionMismatch(f"{len(values)} values for {n * n} unknowns")
    return [list(values[i * n:(i + 1) * n]) for i in range(n)]


@dataclass(frozen=True)
class LazyEquation:
    """An invariant equation kept as data and evaluated by determinants."""
    G: FqMatrix
    invariant: ExponentVector
    target: int
    direction: EquationTag

    def evaluate(self, values: Sequence[int]) -> int:
        n, field_ = self.G.cols, self.G.field
        X = FqMatrix.from_rows(field_, assignment_matrix(values, n))
        if self.direction == EquationTag.TRANSPOSED:
            X = X.transpose()
        M = self.G @ X
        q = field_.q
        table = self.invariant.indexer.table
        g, f = 1, 1
        for r, e in self.invariant.numerator:
            g = g * pow(minor(M, table[r]), e, q) % q
        for r, e in self.invariant.denominator:
            f = f * pow(minor(M, table[r]), e, q) % q
        return (g - f * self.target) % q

    def expand(self, term_bound: int = DEFAULT_SETTINGS.expansion_term_bound) -> SparsePoly:
        builder = model_equation if self.direction == EquationTag.FORWARD else transpose_equation
        return builder(self.G, self.target, self.invariant, expand=True, term_bound=term_bound)


@dataclass(frozen=True)
class ModelEquation:
    """One equation of the system with its tag."""
    body: Union[SparsePoly, LazyEquation]
    tag: EquationTag
    invariant_index: Optional[int] = None

    @property
    def is_expanded(self) -> bool:
        return isinstance(self.body, SparsePoly)

    def evaluate(self, values: Sequence[int]) -> int:
        return self.body.evaluate(values)

    def total_degree(self) -> int:
        if not self.is_expanded:
            raise NotExpanded(f"{self.tag.value} equation is lazy")
        return self.body.total_degree()


@dataclass
class ModelSystem:
    """Equations, the invariants they came from, and the instance they model."""
    q: int
    n: int
    k: int
    G1: FqMatrix
    G2: FqMatrix
    instance_digest: str
    equations: List[ModelEquation] = field(default_factory=list)
    invariants_used: List[ExponentVector] = field(default_factory=list)
    pair_invariants: List[Optional[PairInvariant]] = field(default_factory=list)

    @property
    def nvars(self) -> int:
        return self.n * self.n

    def by_tag(self, tag: EquationTag) -> List[ModelEquation]:
        return [eq for eq in self.equations if eq.tag == tag]

    @property
    def constraints(self) -> List[ModelEquation]:
        return [eq for eq in self.equations if eq.tag not in INVARIANT_TAGS]


def symbolic_product(G: FqMatrix, transposed: bool = False) -> LinearFormMatrix:
    """Linear forms of G.X, or of G.X^T when transposed."""
    n, q = G.cols, G.field.q
    nvars = n * n
    entries = []
    for i in range(G.rows):
        row = []
        for j in range(n):
            if transposed:
                coefficients = ((j * n + t, G.data[i][t]) for t in range(n) if G.data[i][t])
            else:
                coefficients = ((t * n + j, G.data[i][t]) for t in range(n) if G.data[i][t])
            row.append(SparsePoly.linear(q, nvars, coefficients))
        entries.append(row)
    return LinearFormMatrix(entries)


def _permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inversions % 2 else 1


def minor_poly(L: LinearFormMatrix, subset: Sequence[int]) -> SparsePoly:
    """Leibniz expansion of the k x k minor of L on the 1-based columns in subset."""
    subset = list(subset)
    if len(subset) != L.rows or any(c < 1 or c > L.cols for c in subset):
        raise BadIndex(f"Invalid column subset {subset} for a {L.rows}x{L.cols} form matrix")
    sample = L[0, 0]
    q, nvars = sample.q, sample.nvars
    total = SparsePoly.zero(q, nvars)
    for perm in itertools.permutations(range(L.rows)):
        term = SparsePoly.constant(q, nvars, _permutation_sign(perm))
        for r, c in enumerate(perm):
            term = term * L[r, subset[c] - 1]
            if term.is_zero():
                break
        total = total + term
    return total


def predicted_term_bound(n: int, k: int, inv: ExponentVector) -> int:
    """Each minor of G.X has at most C(n,k)*k! monomials (Cauchy-Binet)."""
    per_minor = math.comb(n, k) * math.factorial(k)
    d_plus = sum(e for _, e in inv.numerator)
    d_minus = sum(e for _, e in inv.denominator)
    return per_minor ** d_plus + per_minor ** d_minus


def _invariant_equation(G: FqMatrix, target: Optional[int], inv: ExponentVector, expand: bool,
                        direction: EquationTag, term_bound: int) -> Union[SparsePoly, LazyEquation]:
    if target is None:
        raise UndefinedInvariant(f"{inv.describe()} is undefined on the target code")
    if G.cols != inv.indexer.n or G.rows != inv.indexer.k:
        raise DimensionMismatch(f"{G.rows}x{G.cols} matrix for an invariant on Gr({inv.indexer.k},{inv.indexer.n})")
    target %= G.field.q
    if not expand:
        return LazyEquation(G, inv, target, direction)

    n, k = G.cols, G.rows
    predicted = predicted_term_bound(n, k, inv)
    if predicted > term_bound:
        raise ExpansionRefused(predicted, term_bound)

    L = symbolic_product(G, transposed=direction == EquationTag.TRANSPOSED)
    q, nvars = G.field.q, n * n
    table = inv.indexer.table
    minors: Dict[int, SparsePoly] = {}

    def product(parts: Iterable[Tuple[int, int]]) -> SparsePoly:
        result = SparsePoly.constant(q, nvars, 1)
        for r, e in parts:
            if r not in minors:
                minors[r] = minor_poly(L, table[r])
            result = result * minors[r] ** e
        return result

    g = product(inv.numerator)
    f = product(inv.denominator)
    return g - f.scale(target)


def model_equation(G1: FqMatrix, target: Optional[int], inv: ExponentVector, expand: bool = True,
                   term_bound: int = DEFAULT_SETTINGS.expansion_term_bound
                   ) -> Union[SparsePoly, LazyEquation]:
    """h(X) = g(G1 X) - f(G1 X) * target, where target = mu(G2)."""
    return _invariant_equation(G1, target, inv, expand, EquationTag.FORWARD, term_bound)


def transpose_equation(G2: FqMatrix, target: Optional[int], inv: ExponentVector, expand: bool = True,
                       term_bound: int = DEFAULT_SETTINGS.expansion_term_bound
                       ) -> Union[SparsePoly, LazyEquation]:
    """h'(X) = g(G2 X^T) - f(G2 X^T) * target, where target = mu(G1)."""
    return _invariant_equation(G2, target, inv, expand, EquationTag.TRANSPOSED, term_bound)


def tagged_constraints(n: int, q: int, field_equations: bool = False) -> List[Tuple[SparsePoly, EquationTag]]:
    nvars = n * n
    one = SparsePoly.constant(q, nvars, 1)
    out: List[Tuple[SparsePoly, EquationTag]] = []
    for i in range(n):
        row = SparsePoly.linear(q, nvars, ((i * n + j, 1) for j in range(n)))
        out.append((row - one, EquationTag.ROW_SUM))
    for j in range(n):
        column = SparsePoly.linear(q, nvars, ((i * n + j, 1) for i in range(n)))
        out.append((column - one, EquationTag.COLUMN_SUM))
    for j in range(n):
        for i, i2 in itertools.combinations(range(n), 2):
            out.append((SparsePoly(q, nvars, {tuple(sorted(((i * n + j, 1), (i2 * n + j, 1)))): 1}),
                        EquationTag.ORTHOGONALITY))
    if field_equations:
        for var in range(nvars):
            x = SparsePoly.variable(q, nvars, var)
            out.append((SparsePoly(q, nvars, {((var, q),): 1}) - x, EquationTag.FIELD))
    return out


def permutation_constraints(n: int, q: int, field_equations: bool = False) -> List[SparsePoly]:
    """Row sums, column sums and x_ij * x_i'j for i < i' (plus x^q - x when asked)."""
    return [poly for poly, _ in tagged_constraints(n, q, field_equations)]


def monomial_count(eq: Union[SparsePoly, ModelEquation, LazyEquation]) -> int:
    if isinstance(eq, ModelEquation):
        eq = eq.body
    if isinstance(eq, LazyEquation):
        raise NotExpanded("Lazy equations have no stored monomials")
    return eq.monomial_count()


def usable_invariants(instance: LceInstance, budget: int,
                      general_invariants: bool = False,
                      seed: int = DEFAULT_SETTINGS.seed
                      ) -> List[Tuple[ExponentVector, Optional[PairInvariant], int, int]]:
    """
    First `budget` invariants defined on both codes.

    Returns (vector, pair or None, mu(G1), mu(G2)) tuples.
    """
    n, k = instance.n, instance.k
    if budget <= 0:
        return []
    if not 1 <= k <= n - 1:
        raise NoUsableInvariant(f"No invariants exist for (k,n)=({k},{n})")
    p1 = plucker(LinearCode(instance.field, instance.G1))
    p2 = plucker(LinearCode(instance.field, instance.G2))

    if general_invariants:
        candidates = ((v, None) for v in invgen(n, k, seed=seed))
    else:
        candidates = ((pair.exponent_vector(n), pair) for pair in iter_pair_invariants(n, k))

    chosen = []
    for v, pair in candidates:
        mu1, mu2 = laurent_eval(v, p1), laurent_eval(v, p2)
        if mu1 is None or mu2 is None:
            continue
        chosen.append((v, pair, mu1, mu2))
        if len(chosen) == budget:
            break
    if not chosen:
        raise NoUsableInvariant(f"No invariant is defined on both codes for (k,n)=({k},{n})")
    return chosen


def build_model(instance: LceInstance, budget: int = DEFAULT_SETTINGS.default_budget,
                expand: bool = True, general_invariants: bool = False,
                field_equations: bool = False,
                term_bound: int = DEFAULT_SETTINGS.expansion_term_bound,
                seed: int = DEFAULT_SETTINGS.seed) -> ModelSystem:
    """Forward and transposed equations for up to `budget` invariants, then the constraints."""
    system = ModelSystem(
        q=instance.q, n=instance.n, k=instance.k,
        G1=instance.G1, G2=instance.G2, instance_digest=instance.digest(),
    )
    for index, (v, pair, mu1, mu2) in enumerate(
            usable_invariants(instance, budget, general_invariants, seed)):
        forward = model_equation(instance.G1, mu2, v, expand=expand, term_bound=term_bound)
        transposed = transpose_equation(instance.G2, mu1, v, expand=expand, term_bound=term_bound)
        system.equations.append(ModelEquation(forward, EquationTag.FORWARD, index))
        system.equations.append(ModelEquation(transposed, EquationTag.TRANSPOSED, index))
        system.invariants_used.append(v)
        system.pair_invariants.append(pair)

    for poly, tag in tagged_constraints(instance.n, instance.q, field_equations):
        system.equations.append(ModelEquation(poly, tag))

    logger.info(f"Built model with {len(system.invariants_used)} invariants and "
                f"{len(system.equations)} equations ({'expanded' if expand else 'lazy'})")
    return system
