#!/usr/bin/env python3
"""
Pluecker LCE Toolkit CLI
Invariants of the diagonal action on the Grassmannian and the algebraic
model of linear code equivalence.
"""

import logging
import platform
import random
import sys
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import click
import yaml
from dotenv import load_dotenv
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from .algebra.field import make_field
from .errors import LceToolkitError
from .experiments import experiment_growth
from .fixture_manager import get_fixture_manager
from .geometry.actions import Permutation
from .geometry.grassmann import plucker, random_code
from .instance_manager import load_instance, load_model, save_instance, save_model, serialize_instance
from .invariants.engine import invgen as run_invgen, laurent_eval, predicted_generator_count
from .lce_harness import HarnessResult, LceHarness
from .lce_instance import gen_instance
from .modeling.modeler import INVARIANT_TAGS, build_model
from .selftest import run_selftest
from .settings import load_settings
from .solver import brute_force_solve, recover_lce_solution, verify_model

# Load environment variables
load_dotenv()

# Initialize rich console
console = Console()

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

EXIT_VALIDATION = 2
EXIT_IO = 4


def _fail(e: Exception):
    """Print the error and exit with the code of its class."""
    if isinstance(e, LceToolkitError):
        code = e.exit_code
    elif isinstance(e, (OSError, yaml.YAMLError)):
        code = EXIT_IO
    elif isinstance(e, ValueError):
        code = EXIT_VALIDATION
    else:
        logger.exception("Unexpected error")
        code = 1
    console.print(f"[red]Error: {e}[/red]")
    sys.exit(code)


def _parse_permutation(text: str) -> Permutation:
    images = [int(part) for part in text.strip().strip('()[]').replace(' ', '').split(',') if part]
    return Permutation(tuple(images))


@click.group()
@click.version_option(version="1.0.0")
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose logging')
@click.option('--config', type=click.Path(), help='YAML settings file')
@click.pass_context
def cli(ctx, verbose, config):
    """Pluecker LCE Toolkit - invariants and algebraic models for linear code equivalence."""
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    try:
        ctx.obj = load_settings(config)
    except Exception as e:
        _fail(e)


@cli.command()
@click.option('--q', 'q', type=int, required=True, help='Field size (prime)')
@click.option('--n', 'n', type=int, required=True, help='Code length')
@click.option('--k', 'k', type=int, required=True, help='Code dimension')
@click.option('--seed', type=int, help='Instance seed (defaults to the configured seed)')
@click.option('--out', '-o', type=click.Path(), help='Output instance file')
@click.pass_obj
def gen(settings, q, n, k, seed, out):
    """Generate a random LCE instance with a known secret."""
    try:
        instance = gen_instance(q, n, k, settings.seed if seed is None else seed)
        if out:
            save_instance(instance, out)
            console.print(f"[green]Instance saved to {out}[/green]")
        else:
            click.echo(serialize_instance(instance), nl=False)
        console.print(f"Digest: {instance.digest()}")
    except Exception as e:
        _fail(e)


@cli.command()
@click.option('--n', 'n', type=int, required=True, help='Code length')
@click.option('--k', 'k', type=int, required=True, help='Code dimension')
@click.option('--q', 'q', type=int, help='Evaluate each generator at a random code over F_q')
@click.option('--seed', type=int, help='Seed for the Jacobian test points')
@click.pass_obj
def invgen(settings, n, k, q, seed):
    """Print independent generators of the invariant field of Gr(k, n)."""
    try:
        seed = settings.seed if seed is None else seed
        generators = run_invgen(n, k, seed=seed, points=settings.jacobian_points,
                                trials=settings.jacobian_trials, prime=settings.evaluation_prime)
        predicted = predicted_generator_count(n, k)

        console.print(Panel.fit(f"Invariant generators of Gr({k},{n})", style="blue bold"))
        table = Table(show_header=True, header_style="bold magenta")
        table.add_column("#", style="cyan", justify="right")
        table.add_column("Invariant")
        table.add_column("Exponents", style="dim")
        point = None
        if q is not None:
            point = plucker(random_code(make_field(q), n, k, random.Random(seed)))
            table.add_column(f"Value over F_{q}", justify="right")
        for i, v in enumerate(generators, 1):
            row = [str(i), v.describe(), " ".join(str(e) for e in v.exps)]
            if point is not None:
                value = laurent_eval(v, point)
                row.append("undefined" if value is None else str(value))
            table.add_row(*row)
        console.print(table)
        console.print(f"{len(generators)} generator(s); predicted k(n-k)-n+1 = {predicted}")
    except Exception as e:
        _fail(e)


@cli.command()
@click.argument('instance_file', type=click.Path())
@click.option('--budget', type=int, help='Number of invariants to use')
@click.option('--expand/--lazy', default=True, help='Expand invariant equations symbolically')
@click.option('--general-invariants', is_flag=True, help='Use invgen generators instead of pair invariants')
@click.option('--field-equations', is_flag=True, help='Append x^q - x for every unknown')
@click.option('--out', '-o', type=click.Path(), help='Output model file')
@click.pass_obj
def model(settings, instance_file, budget, expand, general_invariants, field_equations, out):
    """Build the polynomial model of an instance."""
    try:
        instance = load_instance(instance_file)
        system = build_model(
            instance, budget=settings.default_budget if budget is None else budget,
            expand=expand, general_invariants=general_invariants,
            field_equations=field_equations, term_bound=settings.expansion_term_bound,
            seed=settings.seed,
        )

        console.print(Panel.fit(f"Model for {Path(instance_file).name}", style="blue bold"))
        table = Table(show_header=True, header_style="bold magenta")
        table.add_column("#", style="cyan", justify="right")
        table.add_column("Tag")
        table.add_column("Invariant")
        table.add_column("Degree", justify="right")
        table.add_column("Monomials", justify="right")
        for index, eq in enumerate(system.equations):
            if eq.tag not in INVARIANT_TAGS:
                continue
            inv = system.invariants_used[eq.invariant_index]
            degree = str(eq.total_degree()) if eq.is_expanded else "-"
            count = str(eq.body.monomial_count()) if eq.is_expanded else "lazy"
            table.add_row(str(index), eq.tag.value, inv.describe(), degree, count)
        console.print(table)
        console.print(f"{len(system.equations)} equations: {len(system.invariants_used)} invariant(s), "
                      f"{len(system.constraints)} permutation constraints")

        if out:
            save_model(system, out)
            console.print(f"[green]Model saved to {out}[/green]")
    except Exception as e:
        _fail(e)


@cli.command()
@click.argument('model_file', type=click.Path())
@click.option('--perm', required=True, help='Permutation images, e.g. 3,1,4,2')
@click.option('--out', '-o', type=click.Path(), help='Write the residuals as YAML')
@click.pass_obj
def verify(settings, model_file, perm, out):
    """Evaluate every model equation at a permutation matrix."""
    try:
        system = load_model(model_file)
        report = verify_model(system, _parse_permutation(perm))

        table = Table(title=f"Residuals at {report.permutation}", show_header=True, header_style="bold magenta")
        table.add_column("#", style="cyan", justify="right")
        table.add_column("Tag")
        table.add_column("Residual", justify="right")
        for r in report.residuals:
            style = "green" if r.value == 0 else "red"
            table.add_row(str(r.index), r.tag.value, f"[{style}]{r.value}[/{style}]")
        console.print(table)

        if out:
            with open(out, 'w', encoding='utf-8', newline='\n') as f:
                yaml.safe_dump({
                    'permutation': list(report.permutation.images),
                    'residuals': [[r.index, r.tag.value, r.value] for r in report.residuals],
                }, f, sort_keys=False, default_flow_style=None)

        if report.all_zero:
            console.print("[green]All residuals zero[/green]")
        else:
            console.print(f"[red]{len(report.nonzero())} nonzero residual(s)[/red]")
            sys.exit(EXIT_VALIDATION)
    except Exception as e:
        _fail(e)


@cli.command()
@click.argument('instance_file', type=click.Path())
@click.option('--jobs', type=int, help='Worker processes for the search')
@click.option('--out', '-o', type=click.Path(), help='Write the witness list as YAML')
@click.pass_obj
def solve(settings, instance_file, jobs, out):
    """Find every permutation witness by exhaustive search."""
    try:
        instance = load_instance(instance_file)
        report = brute_force_solve(instance, jobs=settings.jobs if jobs is None else jobs,
                                   max_n=settings.brute_force_max_n)

        table = Table(title="Permutation witnesses", show_header=True, header_style="bold magenta")
        table.add_column("P", style="cyan")
        table.add_column("D (Q = D.P)")
        table.add_column("Secret", justify="center")
        for monomial in report.monomials():
            is_secret = instance.secret is not None and monomial.perm == instance.secret.perm
            table.add_row(str(monomial.perm), " ".join(str(d) for d in monomial.diag.entries),
                          "yes" if is_secret else "")
        console.print(table)
        console.print(f"{len(report.witnesses)} witness(es) among {report.permutations_checked} permutations "
                      f"({report.zero_pattern_rejections} rejected by zero pattern)")

        if report.witnesses:
            S, Q = recover_lce_solution(instance, report.witnesses[0][0]) or (None, None)
            if S is not None:
                console.print(f"Change of basis for {Q.perm}: {S.to_lists()}")

        if out:
            with open(out, 'w', encoding='utf-8', newline='\n') as f:
                yaml.safe_dump({
                    'instance_digest': instance.digest(),
                    'witnesses': [{'P': list(m.perm.images), 'D': list(m.diag.entries)}
                                  for m in report.monomials()],
                }, f, sort_keys=False, default_flow_style=None)
            console.print(f"[green]Witnesses saved to {out}[/green]")
    except Exception as e:
        _fail(e)


@cli.command()
@click.option('--q', 'q', type=int, help='Field for the growth grid (defaults to bench_q)')
@click.option('--seed', type=int, help='Seed for the bench instances')
@click.option('--out', '-o', type=click.Path(), help='Write the text report to a file')
@click.pass_obj
def bench(settings, q, seed, out):
    """Measure monomial growth of the expanded forward equation."""
    try:
        seed = settings.seed if seed is None else seed
        report = experiment_growth(seed=seed, q=q, settings=settings)

        table = Table(title="Expanded forward equation", show_header=True, header_style="bold magenta")
        table.add_column("(k,n)", style="cyan")
        table.add_column("q", justify="right")
        table.add_column("Invariant")
        table.add_column("Degree", justify="right")
        table.add_column("Monomials", justify="right")
        for t in report.measured():
            table.add_row(f"({t.k},{t.n})", str(t.q), t.details['invariant'],
                          str(t.details['degree']), str(t.details['monomials']))
        console.print(table)
        console.print(f"Strictly increasing: {report.strictly_increasing}")
        if report.guard_shape is not None:
            status = "refused" if report.guard_triggered else "[red]not triggered[/red]"
            console.print(f"Expansion guard at (k,n)={report.guard_shape}: {status}"
                          + (f", {report.guard_predicted} predicted terms" if report.guard_predicted else ""))

        if out:
            harness = LceHarness(seed, settings)
            result = HarnessResult(seed, {report.experiment: report})
            with open(out, 'w', encoding='utf-8', newline='\n') as f:
                f.write(harness.format_harness_results(result) + "\n")
            console.print(f"[green]Report saved to {out}[/green]")

        if not report.passed:
            sys.exit(EXIT_VALIDATION)
    except Exception as e:
        _fail(e)


@cli.command()
@click.option('--fixtures-dir', type=click.Path(), help='Directory of instance fixtures')
@click.pass_obj
def selftest(settings, fixtures_dir):
    """Run golden fixtures and reduced property suites."""
    try:
        report = run_selftest(fixtures_dir, settings)
    except Exception as e:
        _fail(e)
        return

    console.print(Panel.fit("Self-test", style="blue bold"))
    for line in report.summary_lines():
        style = "green" if line.startswith("PASS") else "red" if line.startswith("FAIL") else "bold"
        console.print(f"[{style}]{line}[/{style}]", highlight=False)
    if not report.passed:
        sys.exit(EXIT_VALIDATION)


@cli.command()
def list_fixtures():
    """List the shipped instance fixtures."""
    try:
        manager = get_fixture_manager()
        manager.display_fixtures()
        console.print(f"\n[dim]Found {len(manager.list_fixtures())} fixture(s).[/dim]")
    except Exception as e:
        _fail(e)


@cli.command()
@click.argument('instance_file', type=click.Path(exists=True))
def validate(instance_file):
    """Validate an instance file and its recorded expected values."""
    try:
        manager = get_fixture_manager()
        issues = manager.validate_fixture_file(instance_file)
        manager.display_validation_results(instance_file, issues)
        if issues['errors']:
            sys.exit(EXIT_VALIDATION)
    except Exception as e:
        _fail(e)


@cli.command()
@click.pass_obj
def check_setup(settings):
    """Check library versions and the effective settings."""
    console.print(Panel.fit("System Setup Check", style="blue bold"))

    python_version = sys.version_info
    console.print(f"Python version: {platform.python_version()}")
    if python_version < (3, 8):
        console.print("[red]Python 3.8+ required[/red]")
    else:
        console.print("[green]Python version OK[/green]")

    table = Table(title="Dependencies", show_header=True, header_style="bold magenta")
    table.add_column("Package", style="cyan")
    table.add_column("Version")
    for package in ("sympy", "pydantic", "PyYAML", "click", "rich", "python-dotenv"):
        try:
            installed = version(package)
        except PackageNotFoundError:
            installed = "[red]missing[/red]"
        table.add_row(package, installed)
    console.print(table)

    table = Table(title="Effective settings", show_header=True, header_style="bold magenta")
    table.add_column("Setting", style="cyan")
    table.add_column("Value", justify="right")
    for name, value in settings.model_dump().items():
        table.add_row(name, str(value))
    console.print(table)

    fixtures = get_fixture_manager().list_fixtures()
    console.print(f"Fixtures: {len(fixtures)} found")


if __name__ == '__main__':
    cli()
