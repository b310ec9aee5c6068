"""
Ground-truth solving and model verification.

brute_force_solve enumerates S_n in blocks keyed by the image of 1; with
jobs > 1 the blocks run in a process pool and are merged in block order,
so the witness list is the same for every job count.
"""

import asyncio
import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .algebra.matrix import FqMatrix, rref
from .errors import DimensionMismatch, SearchSpaceTooLarge
from .geometry.actions import (
    DiagonalElement, MonomialElement, Permutation, act_permutation,
    conjugate_to_left, quotient_act, same_diagonal_class,
)
from .lce_instance import LceInstance
from .modeling.modeler import EquationTag, ModelSystem
from .settings import DEFAULT_SETTINGS

logger = logging.getLogger(__name__)

Witness = Tuple[Permutation, DiagonalElement]


@dataclass
class BlockResult:
    """Witnesses found among the permutations sending 1 to `first_image`."""
    first_image: int
    witnesses: List[Witness]
    checked: int
    zero_pattern_rejections: int


@dataclass
class SolveReport:
    """All permutation witnesses of an instance with the work done to find them."""
    witnesses: List[Witness]
    permutations_checked: int
    zero_pattern_rejections: int
    elapsed_seconds: float
    jobs: int = 1

    def permutations(self) -> List[Permutation]:
        return [perm for perm, _ in self.witnesses]

    def contains(self, P: Permutation) -> bool:
        return any(perm == P for perm, _ in self.witnesses)

    def monomials(self) -> List[MonomialElement]:
        """Witnesses rewritten as Q = D.P with G1.Q spanning the row space of G2."""
        return [MonomialElement(conjugate_to_left(lam, perm), perm) for perm, lam in self.witnesses]


@dataclass
class Residual:
    index: int
    tag: EquationTag
    value: int
    invariant_index: Optional[int] = None


@dataclass
class ResidualReport:
    """Per-equation residuals of a model at one permutation."""
    permutation: Permutation
    residuals: List[Residual] = field(default_factory=list)

    @property
    def all_zero(self) -> bool:
        return all(r.value == 0 for r in self.residuals)

    def nonzero(self) -> List[Residual]:
        return [r for r in self.residuals if r.value]

    def for_tag(self, tag: EquationTag) -> List[Residual]:
        return [r for r in self.residuals if r.tag == tag]


def _solve_block(instance: LceInstance, first_image: int) -> BlockResult:
    n = instance.n
    code1, target = instance.code1, instance.code2
    rest = [i for i in range(1, n + 1) if i != first_image]
    witnesses: List[Witness] = []
    checked = rejected = 0
    for tail in itertools.permutations(rest):
        perm = Permutation((first_image,) + tail)
        checked += 1
        # the dlog system is exact on matching supports, no exhaustive confirmation
        result = same_diagonal_class(quotient_act(perm, code1), target, exhaustive_limit=0)
        if result.method == "zero-pattern":
            rejected += 1
        elif result.witness is not None:
            witnesses.append((perm, result.witness))
    return BlockResult(first_image, witnesses, checked, rejected)


async def _run_blocks(instance: LceInstance, jobs: int) -> List[BlockResult]:
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        tasks = [
            loop.run_in_executor(pool, _solve_block, instance, first_image)
            for first_image in range(1, instance.n + 1)
        ]
        return list(await asyncio.gather(*tasks))


def brute_force_solve(instance: LceInstance, jobs: int = DEFAULT_SETTINGS.jobs,
                      max_n: int = DEFAULT_SETTINGS.brute_force_max_n) -> SolveReport:
    """
    Every permutation P for which RREF(G1.P) is diagonal-equivalent to G2.

    Args:
        instance: the instance to solve
        jobs: worker processes; 1 runs the blocks in this process
        max_n: refuse to enumerate S_n beyond this length

    Returns:
        SolveReport with witnesses in lexicographic order of the permutation
    """
    if instance.n > max_n:
        raise SearchSpaceTooLarge(f"n={instance.n} exceeds the brute-force cap of {max_n}")
    start = time.perf_counter()
    if jobs > 1 and instance.n > 1:
        blocks = asyncio.run(_run_blocks(instance, jobs))
    else:
        blocks = [_solve_block(instance, first) for first in range(1, instance.n + 1)]

    witnesses = [w for block in blocks for w in block.witnesses]
    report = SolveReport(
        witnesses=witnesses,
        permutations_checked=sum(b.checked for b in blocks),
        zero_pattern_rejections=sum(b.zero_pattern_rejections for b in blocks),
        elapsed_seconds=time.perf_counter() - start,
        jobs=jobs,
    )
    logger.info(f"Brute force over S_{instance.n}: {len(witnesses)} witnesses "
                f"from {report.permutations_checked} permutations in {report.elapsed_seconds:.2f}s")
    return report


def verify_model(system: ModelSystem, P: Permutation) -> ResidualReport:
    """Evaluate every equation at the 0/1 assignment of P."""
    if P.n != system.n:
        raise DimensionMismatch(f"Permutation of size {P.n} for a model with n={system.n}")
    values = P.assignment()
    report = ResidualReport(P)
    for index, eq in enumerate(system.equations):
        report.residuals.append(Residual(index, eq.tag, eq.evaluate(values), eq.invariant_index))
    return report


def recover_lce_solution(instance: LceInstance, P: Permutation
                         ) -> Optional[Tuple[FqMatrix, MonomialElement]]:
    """(S, Q) with S.G1.Q = G2 and Q = D.P, or None when P is not a witness."""
    result = same_diagonal_class(act_permutation(P, instance.code1), instance.code2)
    if result.witness is None:
        return None
    Q = MonomialElement(conjugate_to_left(result.witness, P), P)
    image = instance.G1 @ Q.matrix()
    _, pivots, _ = rref(image)
    S = instance.G2.columns(pivots) @ image.columns(pivots).inverse()
    if S @ image != instance.G2:
        logger.warning(f"Change of basis for {P} failed to reproduce G2")
        return None
    return S, Q
