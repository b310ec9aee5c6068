import pytest

from src.experiments import (
    ORACLE_GRID, SOUNDNESS_GRID, BaseExperiment, OracleExperiment, SoundnessExperiment, TrialOutcome,
    experiment_growth, experiment_oracle, experiment_soundness, spurious_rate,
)
from src.lce_harness import LceHarness


class ExplodingExperiment(BaseExperiment):
    name = "exploding"

    def _run_trial(self, q, n, k, seed):
        raise ValueError("boom")


def test_zero_trials_give_empty_report():
    report = SoundnessExperiment([(5, 4, 2)], 0).run()
    assert report.trials == []
    assert report.passed
    assert spurious_rate(report) == 0.0


def test_small_soundness_run():
    report = SoundnessExperiment([(5, 4, 2), (7, 5, 2), (11, 5, 3)], 6, seed=1).run()
    assert len(report.trials) == 6
    assert report.passed
    assert {t.status for t in report.trials} <= {"vanished", "no-usable-invariant"}
    for t in report.trials:
        if t.status == "vanished":
            assert t.details["wrong_sampled"] == 20
            assert 0 <= t.details["wrong_rejected"] <= 20
    assert 0.0 <= spurious_rate(report) <= 1.0


def test_small_oracle_run():
    report = OracleExperiment([(5, 4, 2), (7, 5, 2)], 4, seed=2).run()
    assert len(report.trials) == 4
    assert report.passed
    assert all(t.details["witnesses"] >= 1 for t in report.trials)


def test_dimension_one_has_no_usable_invariant():
    report = SoundnessExperiment([(5, 4, 1)], 2).run()
    assert [t.status for t in report.trials] == ["no-usable-invariant"] * 2
    assert report.passed


def test_failing_trial_is_recorded():
    report = ExplodingExperiment([(5, 4, 2)], 3).run()
    assert report.count("error") == 3
    assert not report.passed
    assert report.failures[0].details == {"error": "boom"}
    assert "error" in report.failures[0].summary_line()


def test_runs_are_deterministic():
    grid = [(5, 4, 2), (7, 5, 3)]
    first = SoundnessExperiment(grid, 4, seed=9).run()
    second = SoundnessExperiment(grid, 4, seed=9).run()
    assert first.summary_lines() == second.summary_lines()


def test_growth_experiment():
    report = experiment_growth()
    assert [(t.k, t.n) for t in report.measured()] == [(2, 4), (2, 5), (2, 6), (3, 6)]
    assert [t.details["degree"] for t in report.measured()] == [4, 4, 4, 6]
    assert report.strictly_increasing
    assert report.guard_triggered
    assert report.guard_predicted == 1828915200
    assert report.passed


def test_growth_without_guard_check():
    report = experiment_growth(grid=[(2, 4)], guard_shape=None)
    assert report.guard_shape is None
    assert report.passed


def test_harness_collects_reports():
    harness = LceHarness(seed=5)
    experiments = harness.build_experiments(
        soundness_trials=2, oracle_trials=2,
        soundness_grid=[(5, 4, 2)], oracle_grid=[(5, 4, 2)], growth_grid=None,
    )
    result = harness.run(experiments)
    assert list(result.reports) == ["soundness", "oracle"]
    assert result.passed
    text = harness.format_harness_results(result)
    assert "SOUNDNESS (2 trials)" in text
    assert "Spurious satisfaction rate" in text
    assert text == harness.format_harness_results(harness.run(harness.build_experiments(
        soundness_trials=2, oracle_trials=2,
        soundness_grid=[(5, 4, 2)], oracle_grid=[(5, 4, 2)], growth_grid=None,
    )))


def test_harness_fallback_report():
    report = LceHarness(seed=1)._create_fallback_report("broken", "no luck")
    assert report.count("error") == 1
    assert not report.passed


class BrokenRunExperiment(BaseExperiment):
    name = "broken"

    def run(self):
        raise RuntimeError("grid unavailable")

    def _run_trial(self, q, n, k, seed):
        raise AssertionError("unreachable")


def test_harness_runs_in_order_past_a_failing_experiment():
    harness = LceHarness(seed=5)
    experiments = [
        BrokenRunExperiment([(5, 4, 2)], 1),
        SoundnessExperiment([(5, 4, 2)], 1, seed=5),
    ]
    result = harness.run(experiments)
    assert list(result.reports) == ["broken", "soundness"]
    assert result.reports["broken"].count("error") == 1
    assert result.reports["broken"].trials[0].details == {"error": "grid unavailable"}
    assert result.reports["soundness"].passed
    assert not result.passed


def test_outcome_summary_line():
    outcome = TrialOutcome(5, 4, 2, 11, "vanished", {"equations": 36})
    assert outcome.summary_line() == "q=5 n=4 k=2 seed=11: vanished (equations=36)"


@pytest.mark.slow
def test_soundness_at_full_scale():
    report = experiment_soundness(SOUNDNESS_GRID, trials=50)
    assert len(report.trials) == 50
    assert report.passed


@pytest.mark.slow
def test_oracle_at_full_scale():
    report = experiment_oracle(ORACLE_GRID, trials=20)
    assert len(report.trials) == 20
    assert report.passed
