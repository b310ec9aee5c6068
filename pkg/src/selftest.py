"""
Self-test: golden fixtures and reduced property suites, each as a named check.
"""

import logging
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List, Optional, Tuple, Union

from .algebra.field import make_field
from .algebra.lattice import int_left_kernel, int_rank, same_lattice
from .geometry.actions import (
    DiagonalElement, Permutation, act_diagonal, act_diagonal_plucker,
)
from .geometry.grassmann import plucker, random_code, subsets_lex
from .invariants.engine import (
    ExponentVector, build_W, incidence_rank, invgen, jacobian_select, kernel_invariants,
    laurent_eval, pair_invariant, predicted_generator_count,
)
from .fixture_manager import FixtureManager
from .lce_harness import LceHarness
from .modeling.modeler import EquationTag, build_model
from .settings import DEFAULT_SETTINGS, ToolkitSettings
from .solver import brute_force_solve, verify_model

logger = logging.getLogger(__name__)

RUNNING_EXAMPLE = "instance-running-example-f5"
INEQUIVALENT_EXAMPLE = "instance-inequivalent-f5"

GR24_W = [
    [1, 1, 0, 0],
    [1, 0, 1, 0],
    [1, 0, 0, 1],
    [0, 1, 1, 0],
    [0, 1, 0, 1],
    [0, 0, 1, 1],
]
GR24_KERNEL = [(1, 0, -1, -1, 0, 1), (0, 1, -1, -1, 1, 0)]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass
class SelfTestReport:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def summary_lines(self) -> List[str]:
        lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" for c in self.checks]
        lines.append(f"{sum(c.passed for c in self.checks)}/{len(self.checks)} checks passed")
        return lines


class SelfTest:
    """Runs every check and records failures instead of stopping at the first."""

    def __init__(self, fixtures_dir: Optional[Union[str, Path]] = None,
                 settings: ToolkitSettings = DEFAULT_SETTINGS):
        self.settings = settings
        self.fixtures_dir = fixtures_dir
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")

    def checks(self) -> List[Tuple[str, Callable[[], str]]]:
        return [
            ("gr24-golden", self.check_gr24_golden),
            ("running-example-golden", self.check_running_example),
            ("inequivalent-fixture", self.check_inequivalent),
            ("incidence-rank", self.check_incidence_rank),
            ("generator-count", self.check_generator_count),
            ("diagonal-invariance", self.check_invariance),
            ("experiments", self.check_experiments),
        ]

    def run(self) -> SelfTestReport:
        report = SelfTestReport()
        for name, check in self.checks():
            try:
                detail = check()
                report.checks.append(CheckResult(name, True, detail))
            except Exception as e:
                self.logger.error(f"Check {name} failed: {e}")
                report.checks.append(CheckResult(name, False, str(e) or type(e).__name__))
        return report

    def _fixtures(self) -> FixtureManager:
        return FixtureManager(self.fixtures_dir)

    def check_gr24_golden(self) -> str:
        W = build_W(4, 2)
        _expect(W.to_lists() == GR24_W, "W_{2,4} differs from the incidence table")
        _expect(int_rank(W) == 4, f"rank of W_{{2,4}} is {int_rank(W)}, expected 4")
        _expect(same_lattice(int_left_kernel(W), GR24_KERNEL), "left kernel of W_{2,4} differs")

        indexer = subsets_lex(4, 2)
        v1, v2 = (ExponentVector(indexer, row) for row in GR24_KERNEL)
        kept = jacobian_select([v1, v2], 4, 2, seed=self.settings.seed)
        _expect(len(kept) == 1, f"Jacobian selection kept {len(kept)} of 2 dependent invariants")

        field = make_field(10007)
        rng = random.Random(self.settings.seed)
        checked = 0
        while checked < 25:
            p = plucker(random_code(field, 4, 2, rng))
            mu1, mu2 = laurent_eval(v1, p), laurent_eval(v2, p)
            if mu1 is None or mu2 is None:
                continue
            _expect(mu2 == (mu1 + 1) % field.q, f"mu_v2 != mu_v1 + 1 at {p.coords}")
            checked += 1
        return f"W, rank 4, kernel and 1 independent generator; identity held at {checked} points"

    def check_running_example(self) -> str:
        fixtures = self._fixtures()
        fixture = fixtures.get_fixture(RUNNING_EXAMPLE)
        _expect(fixture is not None, f"fixture {RUNNING_EXAMPLE} not found")
        instance = fixtures.load_fixture_instance(RUNNING_EXAMPLE)
        expected = fixture.expected

        _expect(list(plucker(instance.code1).coords) == expected['plucker_G1'], "plucker(G1) mismatch")
        _expect(list(plucker(instance.code2).coords) == expected['plucker_G2'], "plucker(G2) mismatch")
        v = pair_invariant(*expected['invariant'], n=instance.n)
        _expect(laurent_eval(v, plucker(instance.code1)) == expected['mu_G1'], "mu(G1) mismatch")
        _expect(laurent_eval(v, plucker(instance.code2)) == expected['mu_G2'], "mu(G2) mismatch")

        system = build_model(instance, budget=1, expand=True, seed=self.settings.seed)
        forward = system.by_tag(EquationTag.FORWARD)[0]
        _expect(forward.total_degree() == expected['forward_degree'],
                f"forward equation has degree {forward.total_degree()}")
        P = Permutation(tuple(expected['witness']))
        _expect(verify_model(system, P).all_zero, f"model residuals nonzero at {P}")
        solved = brute_force_solve(instance, jobs=1, max_n=self.settings.brute_force_max_n)
        _expect(solved.contains(P), f"brute force missed {P}")
        return (f"Pluecker vectors, mu = {expected['mu_G2']}, degree {expected['forward_degree']}, "
                f"{len(solved.witnesses)} witnesses including {P}")

    def check_inequivalent(self) -> str:
        fixtures = self._fixtures()
        fixture = fixtures.get_fixture(INEQUIVALENT_EXAMPLE)
        _expect(fixture is not None, f"fixture {INEQUIVALENT_EXAMPLE} not found")
        instance = fixtures.load_fixture_instance(INEQUIVALENT_EXAMPLE)
        solved = brute_force_solve(instance, jobs=1, max_n=self.settings.brute_force_max_n)
        wanted = fixture.expected.get('witnesses', 0)
        _expect(len(solved.witnesses) == wanted, f"{len(solved.witnesses)} witnesses, expected {wanted}")
        return f"{len(solved.witnesses)} witnesses over {solved.permutations_checked} permutations"

    def check_incidence_rank(self) -> str:
        cases = 0
        for n in range(2, 8):
            for k in range(1, n + 1):
                rank = int_rank(build_W(n, k))
                _expect(rank == incidence_rank(n, k), f"rank W_{{{k},{n}}} = {rank}, expected {incidence_rank(n, k)}")
                cases += 1
        return f"{cases} incidence matrices with the closed-form rank"

    def check_generator_count(self) -> str:
        counts = []
        for n, k in ((4, 2), (5, 2), (6, 2)):
            got = len(invgen(n, k, seed=self.settings.seed))
            _expect(got == predicted_generator_count(n, k),
                    f"invgen({n},{k}) returned {got}, expected {predicted_generator_count(n, k)}")
            counts.append(got)
        return "generator counts " + ", ".join(str(c) for c in counts)

    def check_invariance(self) -> str:
        rng = random.Random(self.settings.seed)
        pairs = 0
        for q in (5, 101):
            field = make_field(q)
            for n, k in ((4, 2), (5, 2)):
                invariants = kernel_invariants(n, k)
                for _ in range(10):
                    code = random_code(field, n, k, rng)
                    lam = DiagonalElement(field, tuple(rng.randrange(1, q) for _ in range(n)))
                    p, image = plucker(code), plucker(act_diagonal(lam, code))
                    _expect(image == act_diagonal_plucker(lam, p), "Pluecker embedding not equivariant")
                    for v in invariants:
                        before, after = laurent_eval(v, p), laurent_eval(v, image)
                        _expect(before is None or before == after, f"invariant {v.describe()} changed")
                    pairs += 1
        return f"{pairs} (code, diagonal) pairs"

    def check_experiments(self) -> str:
        harness = LceHarness(settings=self.settings)
        experiments = harness.build_experiments(
            soundness_trials=6, oracle_trials=3,
            soundness_grid=[(5, 4, 2), (7, 5, 2), (11, 5, 3)],
            oracle_grid=[(5, 4, 2), (7, 5, 2), (11, 5, 3)],
            growth_grid=None,
        )
        result = harness.run(experiments)
        failures = result.failures()
        _expect(result.passed, "; ".join(f"{name}: {t.summary_line()}" for name, t in failures))
        return ", ".join(f"{name} {len(r.trials)} trials" for name, r in result.reports.items())


def _expect(condition: bool, message: str):
    if not condition:
        raise AssertionError(message)


def run_selftest(fixtures_dir: Optional[Union[str, Path]] = None,
                 settings: ToolkitSettings = DEFAULT_SETTINGS) -> SelfTestReport:
    return SelfTest(fixtures_dir, settings).run()
