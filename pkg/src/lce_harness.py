"""
Harness that runs the reproducibility experiments and collects their reports.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .experiments import (
    GROWTH_GRID, ORACLE_GRID, SOUNDNESS_GRID, BaseExperiment, ExperimentReport,
    GrowthExperiment, GrowthReport, OracleExperiment, SoundnessExperiment, TrialOutcome,
    spurious_rate,
)
from .experiments.base_experiment import GridPoint
from .settings import DEFAULT_SETTINGS, ToolkitSettings


@dataclass
class HarnessResult:
    """Reports of every experiment in one harness run."""
    seed: int
    reports: Dict[str, ExperimentReport] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports.values())

    def failures(self) -> List[Tuple[str, TrialOutcome]]:
        return [(name, t) for name, report in self.reports.items() for t in report.failures]


class LceHarness:
    """Runs soundness, oracle and growth experiments with one seed."""

    def __init__(self, seed: Optional[int] = None, settings: ToolkitSettings = DEFAULT_SETTINGS):
        """
        Initialize the harness.

        Args:
            seed: master seed; defaults to the configured seed
            settings: validated toolkit settings
        """
        self.logger = logging.getLogger(__name__)
        self.settings = settings
        self.seed = settings.seed if seed is None else seed

    def build_experiments(self, soundness_trials: int = 50, oracle_trials: int = 20,
                          soundness_grid: Sequence[GridPoint] = SOUNDNESS_GRID,
                          oracle_grid: Sequence[GridPoint] = ORACLE_GRID,
                          growth_grid: Optional[Sequence[Tuple[int, int]]] = GROWTH_GRID
                          ) -> List[BaseExperiment]:
        experiments: List[BaseExperiment] = []
        if soundness_trials:
            experiments.append(SoundnessExperiment(soundness_grid, soundness_trials, self.seed, self.settings))
        if oracle_trials:
            experiments.append(OracleExperiment(oracle_grid, oracle_trials, self.seed, self.settings))
        if growth_grid:
            points = [(self.settings.bench_q, n, k) for k, n in growth_grid]
            experiments.append(GrowthExperiment(points, self.seed, settings=self.settings))
        return experiments

    def run(self, experiments: Sequence[BaseExperiment]) -> HarnessResult:
        """
        Run the experiments one after another, in the order given.

        An experiment that raises is replaced by a fallback report holding a
        single "error" outcome, so one failure never hides the others.
        """
        self.logger.info(f"Running {len(experiments)} experiments with seed {self.seed}")
        result = HarnessResult(self.seed)
        for experiment in experiments:
            try:
                report = experiment.run()
            except Exception as e:
                self.logger.error(f"Experiment {experiment.name} failed: {e}")
                report = self._create_fallback_report(experiment.name, str(e))
            result.reports[experiment.name] = report
        self.logger.info(f"Harness finished: {'passed' if result.passed else 'FAILED'}")
        return result

    def _create_fallback_report(self, name: str, error_message: str) -> ExperimentReport:
        report = ExperimentReport(name)
        report.trials.append(TrialOutcome(0, 0, 0, self.seed, "error", {"error": error_message}))
        return report

    def format_harness_results(self, result: HarnessResult) -> str:
        """Plain-text report; contains no timings so reruns compare equal."""
        lines = []
        lines.append("=" * 80)
        lines.append("EXPERIMENT RESULTS")
        lines.append("=" * 80)
        lines.append(f"Seed: {result.seed}")
        lines.append(f"Status: {'PASS' if result.passed else 'FAIL'}")

        for name, report in result.reports.items():
            lines.append("")
            lines.append(f"{name.upper()} ({len(report.trials)} trials)")
            lines.append("-" * 40)
            statuses = sorted({t.status for t in report.trials})
            lines.append("Outcomes: " + (", ".join(f"{s}={report.count(s)}" for s in statuses) or "none"))
            if name == "soundness":
                lines.append(f"Spurious satisfaction rate of wrong permutations: {spurious_rate(report):.3f}")
            if isinstance(report, GrowthReport):
                for t in report.measured():
                    lines.append(f"  (k,n)=({t.k},{t.n}) q={t.q}: {t.details['monomials']} monomials, "
                                 f"degree {t.details['degree']}")
                lines.append(f"Strictly increasing: {report.strictly_increasing}")
                if report.guard_shape is not None:
                    lines.append(f"Guard at (k,n)={report.guard_shape}: "
                                 f"{'refused' if report.guard_triggered else 'NOT triggered'}"
                                 + (f" ({report.guard_predicted} predicted terms)"
                                    if report.guard_predicted is not None else ""))
            for t in report.failures:
                lines.append(f"  FAILED {t.summary_line()}")

        lines.append("\n" + "=" * 80)
        return "\n".join(lines)
