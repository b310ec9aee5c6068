"""
Linear code equivalence instances: two RREF generator matrices and, for
generated instances, the secret monomial map between them.
"""

import hashlib
import logging
import random
from dataclasses import dataclass
from typing import Optional

from .algebra.field import PrimeField, make_field
from .algebra.matrix import FqMatrix, rref
from .errors import BadParams, InstanceValidationError
from .geometry.actions import DiagonalElement, MonomialElement, Permutation
from .geometry.grassmann import LinearCode, random_code

logger = logging.getLogger(__name__)

CONVENTION = "Q=D*P"


@dataclass(frozen=True)
class LceInstance:
    """G2 = RREF(G1 . D . P) for the secret (D, P) when present."""
    field: PrimeField
    n: int
    k: int
    G1: FqMatrix
    G2: FqMatrix
    secret: Optional[MonomialElement] = None
    seed: Optional[int] = None

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def code1(self) -> LinearCode:
        return LinearCode(self.field, self.G1)

    @property
    def code2(self) -> LinearCode:
        return LinearCode(self.field, self.G2)

    def digest(self) -> str:
        """SHA-256 over (q, n, k, G1, G2); the secret is not covered."""
        text = "|".join([
            f"q={self.q}", f"n={self.n}", f"k={self.k}",
            "G1=" + ";".join(",".join(str(x) for x in row) for row in self.G1.data),
            "G2=" + ";".join(",".join(str(x) for x in row) for row in self.G2.data),
        ])
        return hashlib.sha256(text.encode('utf-8')).hexdigest()

    def validate(self) -> None:
        """Check shapes, rank, RREF form and the secret relation."""
        for name, G in (("G1", self.G1), ("G2", self.G2)):
            if (G.rows, G.cols) != (self.k, self.n):
                raise InstanceValidationError(f"{name} is {G.rows}x{G.cols}, expected {self.k}x{self.n}")
            reduced, _, rank = rref(G)
            if rank != self.k:
                raise InstanceValidationError(f"{name} has rank {rank}, expected {self.k}")
            if reduced != G:
                raise InstanceValidationError(f"{name} is not in reduced row echelon form")
        if self.secret is not None:
            if self.secret.perm.n != self.n:
                raise InstanceValidationError("Secret has the wrong size")
            image = rref(self.G1 @ self.secret.matrix())[0]
            if image != self.G2:
                raise InstanceValidationError("Secret does not map G1 onto G2 (convention Q=D*P)")


def gen_instance(q: int, n: int, k: int, seed: int) -> LceInstance:
    """Random code, diagonal and permutation; fully determined by seed."""
    if n < 1 or not 1 <= k <= n:
        raise BadParams(f"Need 1 <= k <= n, got n={n}, k={k}")
    field = make_field(q)
    rng = random.Random(seed)
    code = random_code(field, n, k, rng)
    diag = DiagonalElement(field, tuple(rng.randrange(1, q) for _ in range(n)))
    images = list(range(1, n + 1))
    rng.shuffle(images)
    secret = MonomialElement(diag, Permutation(tuple(images)))

    G1 = rref(code.gen)[0]
    G2 = rref(code.gen @ secret.matrix())[0]
    instance = LceInstance(field, n, k, G1, G2, secret, seed)
    logger.info(f"Generated instance q={q} n={n} k={k} seed={seed} digest={instance.digest()[:12]}")
    return instance
