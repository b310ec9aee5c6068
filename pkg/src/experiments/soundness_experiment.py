"""
Soundness: every model equation vanishes at the secret permutation, and
random wrong permutations are mostly rejected.
"""

import random

from ..errors import NoUsableInvariant
from ..geometry.actions import Permutation
from ..lce_instance import gen_instance
from ..modeling.modeler import build_model
from ..solver import verify_model
from .base_experiment import BaseExperiment, TrialOutcome

WRONG_SAMPLES = 20


class SoundnessExperiment(BaseExperiment):
    """
    Checks that model equations are necessary conditions.

    Status per trial is "vanished", "violated" or "no-usable-invariant";
    the rejection rate of wrong permutations is reported, not asserted.
    """

    name = "soundness"

    def __init__(self, *args, wrong_samples: int = WRONG_SAMPLES, **kwargs):
        super().__init__(*args, **kwargs)
        self.wrong_samples = wrong_samples

    def _run_trial(self, q: int, n: int, k: int, seed: int) -> TrialOutcome:
        instance = gen_instance(q, n, k, seed)
        try:
            system = build_model(instance, budget=self.settings.default_budget, expand=False,
                                 seed=self.settings.seed)
        except NoUsableInvariant:
            return TrialOutcome(q, n, k, seed, "no-usable-invariant")

        secret = instance.secret.perm
        report = verify_model(system, secret)
        if not report.all_zero:
            self.logger.error(f"Residuals {[r.index for r in report.nonzero()]} nonzero at the secret (seed {seed})")
            return TrialOutcome(q, n, k, seed, "violated", {"nonzero": len(report.nonzero())})

        rng = random.Random(seed)
        rejected = sampled = 0
        while sampled < self.wrong_samples and n > 1:
            images = list(range(1, n + 1))
            rng.shuffle(images)
            wrong = Permutation(tuple(images))
            if wrong == secret:
                continue
            sampled += 1
            if not verify_model(system, wrong).all_zero:
                rejected += 1
        return TrialOutcome(q, n, k, seed, "vanished", {
            "equations": len(system.equations),
            "wrong_sampled": sampled,
            "wrong_rejected": rejected,
        })


def spurious_rate(report) -> float:
    """Fraction of sampled wrong permutations that satisfied every equation."""
    sampled = sum(t.details.get("wrong_sampled", 0) for t in report.trials)
    rejected = sum(t.details.get("wrong_rejected", 0) for t in report.trials)
    return (sampled - rejected) / sampled if sampled else 0.0
