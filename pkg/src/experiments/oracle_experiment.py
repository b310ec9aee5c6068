"""
Cross-oracle agreement between brute-force search and the algebraic model.
"""

from ..errors import NoUsableInvariant
from ..lce_instance import gen_instance
from ..modeling.modeler import build_model
from ..solver import brute_force_solve, verify_model
from .base_experiment import BaseExperiment, TrialOutcome


class OracleExperiment(BaseExperiment):
    """The secret is a brute-force witness and every witness zeroes the model."""

    name = "oracle"

    def _run_trial(self, q: int, n: int, k: int, seed: int) -> TrialOutcome:
        instance = gen_instance(q, n, k, seed)
        solved = brute_force_solve(instance, jobs=1, max_n=self.settings.brute_force_max_n)
        details = {"witnesses": len(solved.witnesses)}

        if not solved.contains(instance.secret.perm):
            self.logger.error(f"Secret {instance.secret.perm} missing from the witness list (seed {seed})")
            return TrialOutcome(q, n, k, seed, "violated", details)

        try:
            system = build_model(instance, budget=self.settings.default_budget, expand=False,
                                 seed=self.settings.seed)
        except NoUsableInvariant:
            return TrialOutcome(q, n, k, seed, "no-usable-invariant", details)

        failing = [str(perm) for perm in solved.permutations() if not verify_model(system, perm).all_zero]
        if failing:
            details["failing"] = len(failing)
            return TrialOutcome(q, n, k, seed, "violated", details)
        return TrialOutcome(q, n, k, seed, "agreed", details)
