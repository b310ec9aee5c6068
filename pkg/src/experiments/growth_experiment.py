"""
Growth of the expanded forward equation with (k, n), plus a check showing the
expansion guard refusing a size that cannot be expanded on a desk machine.
"""

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..algebra.field import make_field
from ..errors import ExpansionRefused, NoUsableInvariant
from ..geometry.grassmann import random_code
from ..invariants.engine import enumerate_pair_invariants
from ..lce_instance import gen_instance
from ..modeling.modeler import model_equation, usable_invariants
from ..settings import DEFAULT_SETTINGS, ToolkitSettings
from .base_experiment import BaseExperiment, ExperimentReport, GridPoint, TrialOutcome

GROWTH_GRID: Tuple[Tuple[int, int], ...] = ((2, 4), (2, 5), (2, 6), (3, 6))
GUARD_SHAPE: Tuple[int, int] = (5, 10)


@dataclass
class GrowthReport(ExperimentReport):
    guard_shape: Optional[Tuple[int, int]] = None
    guard_predicted: Optional[int] = None
    guard_triggered: bool = False

    def measured(self) -> List[TrialOutcome]:
        return [t for t in self.trials if t.status == "measured"]

    @property
    def monomial_counts(self) -> List[int]:
        return [t.details["monomials"] for t in self.measured()]

    @property
    def strictly_increasing(self) -> bool:
        counts = self.monomial_counts
        return all(a < b for a, b in zip(counts, counts[1:]))

    @property
    def passed(self) -> bool:
        guard_ok = self.guard_shape is None or self.guard_triggered
        return not self.failures and self.strictly_increasing and guard_ok


class GrowthExperiment(BaseExperiment):
    """One expanded forward equation per grid point, in grid order."""

    name = "growth"
    report_class = GrowthReport

    def __init__(self, grid: Sequence[GridPoint], seed: int = DEFAULT_SETTINGS.seed,
                 guard_shape: Optional[Tuple[int, int]] = GUARD_SHAPE,
                 settings: ToolkitSettings = DEFAULT_SETTINGS):
        super().__init__(grid, len(grid), seed, settings)
        self.guard_shape = guard_shape

    def run(self) -> GrowthReport:
        report = super().run()
        if self.guard_shape is not None:
            self._check_guard(report)
        return report

    def _run_trial(self, q: int, n: int, k: int, seed: int) -> TrialOutcome:
        instance = gen_instance(q, n, k, seed)
        try:
            v, _, _, mu2 = usable_invariants(instance, budget=1)[0]
        except NoUsableInvariant:
            return TrialOutcome(q, n, k, seed, "no-usable-invariant")
        h = model_equation(instance.G1, mu2, v, expand=True,
                           term_bound=self.settings.expansion_term_bound)
        self.logger.debug(f"(k,n)=({k},{n}): {h.monomial_count()} monomials")
        return TrialOutcome(q, n, k, seed, "measured", {
            "invariant": v.describe(),
            "monomials": h.monomial_count(),
            "degree": h.total_degree(),
        })

    def _check_guard(self, report: GrowthReport):
        k, n = self.guard_shape
        field = make_field(self.settings.bench_q)
        gen = random_code(field, n, k, random.Random(self.seed)).gen
        v = enumerate_pair_invariants(n, k, limit=1)[0].exponent_vector(n)
        report.guard_shape = (k, n)
        try:
            model_equation(gen, 1, v, expand=True, term_bound=self.settings.expansion_term_bound)
        except ExpansionRefused as e:
            report.guard_predicted = e.predicted
            report.guard_triggered = True
            self.logger.info(f"Expansion guard refused (k,n)=({k},{n}): {e.predicted} predicted terms")
        else:
            self.logger.warning(f"Expansion guard did not trigger at (k,n)=({k},{n})")
