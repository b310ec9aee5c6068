"""
Base class for the reproducibility experiments.

An experiment walks a parameter grid with seeded trials. Each trial yields a
TrialOutcome; a trial that raises is recorded with status "error" instead of
aborting the whole run.
"""

import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

from ..settings import DEFAULT_SETTINGS, ToolkitSettings

GridPoint = Tuple[int, int, int]


@dataclass
class TrialOutcome:
    """Result of one seeded trial at one grid point (q, n, k)."""
    q: int
    n: int
    k: int
    seed: int
    status: str
    details: Dict[str, Any] = field(default_factory=dict)

    def summary_line(self) -> str:
        extra = ", ".join(f"{key}={value}" for key, value in sorted(self.details.items()))
        return f"q={self.q} n={self.n} k={self.k} seed={self.seed}: {self.status}" + (f" ({extra})" if extra else "")


@dataclass
class ExperimentReport:
    """Outcomes of every trial of one experiment."""
    experiment: str
    trials: List[TrialOutcome] = field(default_factory=list)

    def count(self, status: str) -> int:
        return sum(1 for t in self.trials if t.status == status)

    @property
    def failures(self) -> List[TrialOutcome]:
        return [t for t in self.trials if t.status in ("violated", "error")]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary_lines(self) -> List[str]:
        return [t.summary_line() for t in self.trials]


class BaseExperiment(ABC):
    """Seeded loop over a parameter grid."""

    name = "experiment"
    report_class = ExperimentReport

    def __init__(self, grid: Sequence[GridPoint], trials: int, seed: int = DEFAULT_SETTINGS.seed,
                 settings: ToolkitSettings = DEFAULT_SETTINGS):
        self.grid = list(grid)
        self.trials = trials
        self.seed = seed
        self.settings = settings
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")

    def run(self) -> ExperimentReport:
        """
        Run `trials` trials, cycling through the grid.

        Returns:
            ExperimentReport: one outcome per trial, in trial order
        """
        self.logger.info(f"Starting {self.name} with {self.trials} trials over {len(self.grid)} grid points")
        report = self.report_class(self.name)
        if not self.grid:
            return report
        rng = random.Random(self.seed)
        for t in range(self.trials):
            q, n, k = self.grid[t % len(self.grid)]
            trial_seed = rng.randrange(2 ** 31)
            try:
                outcome = self._run_trial(q, n, k, trial_seed)
            except Exception as e:
                self.logger.error(f"Trial {t + 1} at q={q} n={n} k={k} failed: {e}")
                outcome = TrialOutcome(q, n, k, trial_seed, "error", {"error": str(e)})
            report.trials.append(outcome)
        self.logger.info(f"{self.name} finished: {len(report.failures)} failures")
        return report

    @abstractmethod
    def _run_trial(self, q: int, n: int, k: int, seed: int) -> TrialOutcome:
        """Run a single trial."""
        pass
