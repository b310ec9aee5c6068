"""
Prime fields F_q with a fixed primitive root.

Elements are stored as canonical residues in [0, q). The Fq wrapper gives
operator syntax for scalar work; matrix code works on raw residues and
takes the modulus from the owning PrimeField.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Union

from sympy.ntheory import discrete_log, isprime, primitive_root

from ..errors import BadParams, CompositeModulus, DivisionByZero
from ..settings import DEFAULT_SETTINGS


@dataclass(frozen=True)
class PrimeField:
    """The field F_q together with its smallest primitive root g."""
    q: int
    g: int

    def __call__(self, value: int) -> "Fq":
        return Fq(value % self.q, self)

    def reduce(self, value: int) -> int:
        return value % self.q

    def inv(self, value: int) -> int:
        value %= self.q
        if value == 0:
            raise DivisionByZero(f"0 has no inverse mod {self.q}")
        return pow(value, -1, self.q)

    def dlog(self, value: int) -> int:
        value %= self.q
        if value == 0:
            raise DivisionByZero(f"discrete log of 0 mod {self.q}")
        if self.q == 2:
            return 0
        if self.q < DEFAULT_SETTINGS.dlog_table_limit:
            return _dlog_table(self.q, self.g)[value]
        return int(discrete_log(self.q, value, self.g))

    def exp(self, exponent: int) -> int:
        return pow(self.g, exponent % (self.q - 1), self.q)

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)


@dataclass(frozen=True)
class Fq:
    """A single element of a PrimeField."""
    value: int
    field: PrimeField

    def _coerce(self, other: Union["Fq", int]) -> int:
        if isinstance(other, Fq):
            if other.field != self.field:
                raise BadParams(f"Mixing F_{self.field.q} and F_{other.field.q}")
            return other.value
        return other

    def __add__(self, other):
        return self.field(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.field(self.value - self._coerce(other))

    def __rsub__(self, other):
        return self.field(self._coerce(other) - self.value)

    def __mul__(self, other):
        return self.field(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self.field(-self.value)

    def __truediv__(self, other):
        return self * inv(self.field(self._coerce(other)))

    def __pow__(self, exponent: int):
        if exponent < 0:
            return inv(self) ** (-exponent)
        return self.field(pow(self.value, exponent, self.field.q))

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.field.q
        if isinstance(other, Fq):
            return self.field == other.field and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.q))

    def __repr__(self):
        return f"{self.value} mod {self.field.q}"


@lru_cache(maxsize=None)
def make_field(q: int) -> PrimeField:
    """
    Create F_q with g the smallest primitive root.

    Raises:
        CompositeModulus: q is not prime
    """
    if q < 2:
        raise BadParams(f"Field size must be at least 2, got {q}")
    if not isprime(q):
        raise CompositeModulus(f"{q} is not prime")
    if q == 2:
        return PrimeField(q=2, g=1)
    return PrimeField(q=q, g=int(primitive_root(q)))


def inv(a: Fq) -> Fq:
    """Multiplicative inverse; raises DivisionByZero on 0."""
    return a.field(a.field.inv(a.value))


def dlog(a: Fq) -> int:
    """Discrete logarithm base the field's primitive root, in [0, q-1)."""
    return a.field.dlog(a.value)


@lru_cache(maxsize=8)
def _dlog_table(q: int, g: int) -> Dict[int, int]:
    table = {}
    power = 1
    for e in range(q - 1):
        table[power] = e
        power = power * g % q
    return table

