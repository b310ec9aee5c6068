"""
Reproducibility experiments: model soundness, brute-force/model agreement and
growth of the expanded equations.
"""

import itertools
from typing import Iterable, Optional, Sequence, Tuple

from ..settings import DEFAULT_SETTINGS, ToolkitSettings
from .base_experiment import BaseExperiment, ExperimentReport, GridPoint, TrialOutcome
from .growth_experiment import GROWTH_GRID, GUARD_SHAPE, GrowthExperiment, GrowthReport
from .oracle_experiment import OracleExperiment
from .soundness_experiment import SoundnessExperiment, spurious_rate

SOUNDNESS_GRID: Tuple[GridPoint, ...] = tuple(
    (q, n, k) for q, n, k in itertools.product((5, 7, 11, 13), (4, 5, 6), (2, 3))
)
ORACLE_GRID: Tuple[GridPoint, ...] = ((5, 4, 2), (7, 5, 2), (11, 5, 3), (13, 6, 3), (7, 6, 2))


def experiment_soundness(grid: Sequence[GridPoint] = SOUNDNESS_GRID, trials: int = 50,
                         seed: int = DEFAULT_SETTINGS.seed,
                         settings: ToolkitSettings = DEFAULT_SETTINGS) -> ExperimentReport:
    return SoundnessExperiment(grid, trials, seed, settings).run()


def experiment_oracle(grid: Sequence[GridPoint] = ORACLE_GRID, trials: int = 20,
                      seed: int = DEFAULT_SETTINGS.seed,
                      settings: ToolkitSettings = DEFAULT_SETTINGS) -> ExperimentReport:
    return OracleExperiment(grid, trials, seed, settings).run()


def experiment_growth(grid: Iterable[Tuple[int, int]] = GROWTH_GRID,
                      seed: int = DEFAULT_SETTINGS.seed,
                      q: Optional[int] = None,
                      guard_shape: Optional[Tuple[int, int]] = GUARD_SHAPE,
                      settings: ToolkitSettings = DEFAULT_SETTINGS) -> GrowthReport:
    """Grid entries are (k, n); every point uses the bench field."""
    q = q or settings.bench_q
    points = [(q, n, k) for k, n in grid]
    return GrowthExperiment(points, seed, guard_shape, settings).run()


__all__ = [
    "BaseExperiment", "ExperimentReport", "TrialOutcome", "GridPoint",
    "SoundnessExperiment", "OracleExperiment", "GrowthExperiment", "GrowthReport",
    "SOUNDNESS_GRID", "ORACLE_GRID", "GROWTH_GRID", "GUARD_SHAPE",
    "experiment_soundness", "experiment_oracle", "experiment_growth", "spurious_rate",
]
