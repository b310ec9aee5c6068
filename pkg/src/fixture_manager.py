"""
Fixture manager for the shipped instance files.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Union

import yaml
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from .errors import LceToolkitError
from .geometry.grassmann import plucker
from .instance_manager import load_instance
from .lce_instance import LceInstance

DEFAULT_FIXTURES_DIR = Path(__file__).parent.parent / "fixtures"


@dataclass
class InstanceFixture:
    """A shipped instance file and its metadata block."""
    name: str
    description: str
    file_path: str
    metadata: Dict

    @property
    def expected(self) -> Dict:
        return self.metadata.get('expected', {})


class FixtureManager:
    """Lists, loads and validates instance fixtures."""

    def __init__(self, fixtures_dir: Optional[Union[str, Path]] = None):
        self.console = Console()
        self.fixtures_dir = Path(fixtures_dir) if fixtures_dir else DEFAULT_FIXTURES_DIR
        self.fixtures = self._load_fixtures()

    def _load_fixtures(self) -> List[InstanceFixture]:
        fixtures = []
        if not self.fixtures_dir.exists():
            return fixtures

        for fixture_file in self.fixtures_dir.glob("instance-*.yaml"):
            try:
                with open(fixture_file, 'r', encoding='utf-8') as f:
                    data = yaml.safe_load(f) or {}
            except (OSError, yaml.YAMLError) as e:
                self.console.print(f"[yellow]Warning: Could not read fixture {fixture_file.name}: {e}[/yellow]")
                continue
            metadata = data.get('metadata', {}) if isinstance(data, dict) else {}
            fixtures.append(InstanceFixture(
                name=fixture_file.stem,
                description=metadata.get('description', 'No description available'),
                file_path=str(fixture_file),
                metadata=metadata,
            ))
        return sorted(fixtures, key=lambda fx: fx.name)

    def list_fixtures(self) -> List[InstanceFixture]:
        return self.fixtures

    def get_fixture(self, name: str) -> Optional[InstanceFixture]:
        for fixture in self.fixtures:
            if fixture.name == name or Path(fixture.file_path).name == name:
                return fixture
        return None

    def load_fixture_instance(self, name: str) -> LceInstance:
        fixture = self.get_fixture(name)
        if fixture is None:
            raise FileNotFoundError(f"Fixture not found: {name}")
        return load_instance(fixture.file_path)

    def display_fixtures(self):
        if not self.fixtures:
            self.console.print(f"[yellow]No fixtures found in {self.fixtures_dir}[/yellow]")
            return

        self.console.print(Panel.fit("Shipped Instance Fixtures", style="blue bold"))
        table = Table(show_header=True, header_style="bold magenta")
        table.add_column("Name", style="cyan", no_wrap=True)
        table.add_column("Expected", style="green")
        table.add_column("Description", style="dim")
        for fixture in self.fixtures:
            table.add_row(fixture.name, ", ".join(sorted(fixture.expected)) or "-", fixture.description)
        self.console.print(table)

    def validate_fixture_file(self, file_path: Union[str, Path]) -> Dict[str, List[str]]:
        """Validate an instance file and any expected values it records."""
        issues = {
            'errors': [],
            'warnings': [],
            'suggestions': []
        }

        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                data = yaml.safe_load(f)
        except (OSError, yaml.YAMLError) as e:
            issues['errors'].append(f"Cannot load YAML file: {e}")
            return issues
        if not isinstance(data, dict):
            issues['errors'].append("File does not contain a YAML mapping")
            return issues

        try:
            instance = load_instance(file_path)
        except LceToolkitError as e:
            issues['errors'].append(str(e))
            return issues

        metadata = data.get('metadata') or {}
        if 'description' not in metadata:
            issues['warnings'].append("Missing recommended metadata field: description")
        if instance.secret is None and 'witnesses' not in metadata.get('expected', {}):
            issues['warnings'].append("No secret and no expected witness count recorded")
        if data.get('seed') is None:
            issues['suggestions'].append("Record the generating seed if the instance came from gen")

        expected = metadata.get('expected', {})
        for name, code in (('plucker_G1', instance.code1), ('plucker_G2', instance.code2)):
            if name in expected and list(plucker(code).coords) != list(expected[name]):
                issues['errors'].append(f"{name} differs from the recorded value {expected[name]}")
        return issues

    def display_validation_results(self, file_path: Union[str, Path], issues: Dict[str, List[str]]):
        self.console.print(Panel.fit(f"Validation Results: {Path(file_path).name}", style="blue bold"))

        if not any(issues.values()):
            self.console.print("[green]Instance file is valid[/green]")
            return

        for key, style, title in (('errors', 'red', 'Errors'), ('warnings', 'yellow', 'Warnings'),
                                  ('suggestions', 'blue', 'Suggestions')):
            if issues[key]:
                self.console.print(f"[{style} bold]{title}:[/{style} bold]")
                for item in issues[key]:
                    self.console.print(f"  - [{style}]{item}[/{style}]")
                self.console.print()

        if issues['errors']:
            self.console.print(f"[red]Found {len(issues['errors'])} error(s).[/red]")
        else:
            self.console.print(f"[yellow]Found {len(issues['warnings'])} warning(s); file is usable.[/yellow]")


def get_fixture_manager(fixtures_dir: Optional[Union[str, Path]] = None) -> FixtureManager:
    return FixtureManager(fixtures_dir)
