"""
Sparse multivariate polynomials over F_q.

Each polynomial is a view over an element of sympy's sparse ring
F_q[x0, ..., x{nvars-1}]; the ring does the arithmetic. The interface
speaks in sparse monomials: a tuple of (variable, power) pairs sorted by
variable, so x_0^2 x_3 is ((0, 2), (3, 1)) and the constant monomial is ().
"""

from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from sympy.polys.domains import GF
from sympy.polys.rings import PolyElement, PolyRing, ring

from ..errors import BadIndex, DimensionMismatch

Monomial = Tuple[Tuple[int, int], ...]


@lru_cache(maxsize=None)
def polynomial_ring(q: int, nvars: int) -> PolyRing:
    if nvars < 1:
        raise BadIndex(f"Need at least one variable, got {nvars}")
    return ring([f"x{i}" for i in range(nvars)], GF(q, symmetric=False))[0]


def _sparse(exponents: Sequence[int]) -> Monomial:
    return tuple((var, power) for var, power in enumerate(exponents) if power)


class SparsePoly:
    """Polynomial in nvars variables over F_q."""

    __slots__ = ('q', 'nvars', 'poly')

    def __init__(self, q: int, nvars: int, terms: Dict[Monomial, int] = None):
        self.q = q
        self.nvars = nvars
        dense: Dict[Tuple[int, ...], int] = {}
        for mono, coeff in (terms or {}).items():
            if any(var < 0 or var >= nvars or power < 1 for var, power in mono):
                raise BadIndex(f"Monomial {mono} invalid for {nvars} variables")
            exponents = [0] * nvars
            for var, power in mono:
                exponents[var] += power
            key = tuple(exponents)
            dense[key] = dense.get(key, 0) + coeff
        self.poly: PolyElement = polynomial_ring(q, nvars).from_dict(dense)

    @classmethod
    def from_ring_element(cls, q: int, nvars: int, poly: PolyElement) -> "SparsePoly":
        if poly.ring != polynomial_ring(q, nvars):
            raise DimensionMismatch(f"{poly.ring} is not F_{q} in {nvars} variables")
        out = cls.__new__(cls)
        out.q, out.nvars, out.poly = q, nvars, poly
        return out

    @classmethod
    def zero(cls, q: int, nvars: int) -> "SparsePoly":
        return cls(q, nvars)

    @classmethod
    def constant(cls, q: int, nvars: int, value: int) -> "SparsePoly":
        return cls(q, nvars, {(): value})

    @classmethod
    def variable(cls, q: int, nvars: int, index: int) -> "SparsePoly":
        if not 0 <= index < nvars:
            raise BadIndex(f"Variable {index} out of range for {nvars} variables")
        return cls.from_ring_element(q, nvars, polynomial_ring(q, nvars).gens[index])

    @classmethod
    def linear(cls, q: int, nvars: int, coefficients: Iterable[Tuple[int, int]]) -> "SparsePoly":
        """sum of c * x_var over (var, c) pairs."""
        terms: Dict[Monomial, int] = {}
        for var, c in coefficients:
            key = ((var, 1),)
            terms[key] = terms.get(key, 0) + c
        return cls(q, nvars, terms)

    def _check(self, other: "SparsePoly"):
        if self.q != other.q or self.nvars != other.nvars:
            raise DimensionMismatch("Polynomials over different rings")

    def _wrap(self, poly: PolyElement) -> "SparsePoly":
        return SparsePoly.from_ring_element(self.q, self.nvars, poly)

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        return self._wrap(self.poly + other.poly)

    def __neg__(self) -> "SparsePoly":
        return self._wrap(-self.poly)

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        return self._wrap(self.poly - other.poly)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        return self._wrap(self.poly * other.poly)

    def scale(self, c: int) -> "SparsePoly":
        return self._wrap(self.poly.mul_ground(self.poly.ring.domain.convert(c)))

    def __pow__(self, exponent: int) -> "SparsePoly":
        return self._wrap(self.poly ** exponent)

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.q == other.q and self.nvars == other.nvars and self.poly == other.poly

    def __hash__(self):
        return hash((self.q, self.nvars, self.poly))

    @property
    def terms(self) -> Dict[Monomial, int]:
        return {_sparse(exponents): int(coeff) % self.q for exponents, coeff in self.poly.iterterms()}

    def is_zero(self) -> bool:
        return not self.poly

    def evaluate(self, values: Sequence[int]) -> int:
        if len(values) != self.nvars:
            raise DimensionMismatch(f"{len(values)} values for {self.nvars} variables")
        return int(self.poly(*values)) % self.q

    def total_degree(self) -> int:
        return max((sum(exponents) for exponents in self.poly.itermonoms()), default=0)

    def is_homogeneous(self, degree: int) -> bool:
        return all(sum(exponents) == degree for exponents in self.poly.itermonoms())

    def monomial_count(self) -> int:
        return len(self.poly.terms())

    def sorted_terms(self) -> List[Tuple[int, Monomial]]:
        """(coeff, monomial) pairs in canonical monomial order."""
        terms = self.terms
        return [(terms[mono], mono) for mono in sorted(terms)]

    def __repr__(self):
        return f"SparsePoly(q={self.q}, nvars={self.nvars}, terms={len(self.poly)})"

    def to_text(self, n: int) -> str:
        """Human-readable form with x_ij names for an n x n grid of unknowns."""
        if not self.terms:
            return "0"
        parts = []
        for coeff, mono in self.sorted_terms():
            factors = [] if coeff == 1 and mono else [str(coeff)]
            for var, power in mono:
                name = f"x{var // n + 1}{var % n + 1}"
                factors.append(name if power == 1 else f"{name}^{power}")
            parts.append("*".join(factors))
        return " + ".join(parts)


class LinearFormMatrix:
    """A k x n grid of degree-1 polynomials standing for G.X."""

    def __init__(self, entries: List[List[SparsePoly]]):
        self.entries = entries
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0

    def __getitem__(self, index: Tuple[int, int]) -> SparsePoly:
        i, j = index
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, LinearFormMatrix):
            return NotImplemented
        return self.entries == other.entries
