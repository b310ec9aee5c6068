"""
Toolkit settings.

Defaults may be overridden by PLUCKER_LCE_* environment variables and by an
optional YAML file; both are validated through the same pydantic model.
"""

import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import BaseModel, Field, field_validator
from sympy.ntheory import isprime

ENV_PREFIX = "PLUCKER_LCE_"


class ToolkitSettings(BaseModel):
    """Validated runtime settings."""
    seed: int = 20240917
    evaluation_prime: int = 2147483647
    jacobian_points: int = Field(default=3, ge=1)
    jacobian_trials: int = Field(default=64, ge=1)
    expansion_term_bound: int = Field(default=10_000_000, ge=1)
    brute_force_max_n: int = Field(default=9, ge=1, le=12)
    exhaustive_diagonal_limit: int = Field(default=2 ** 20, ge=1)
    dlog_table_limit: int = Field(default=2 ** 16, ge=2)
    default_budget: int = Field(default=2, ge=0)
    jobs: int = Field(default=1, ge=1)
    bench_q: int = 101

    @field_validator('evaluation_prime', 'bench_q')
    @classmethod
    def must_be_prime(cls, v):
        if not isprime(v):
            raise ValueError(f'{v} is not prime')
        return v


def _env_overrides() -> Dict[str, Any]:
    overrides = {}
    for name in ToolkitSettings.model_fields:
        value = os.getenv(f"{ENV_PREFIX}{name.upper()}")
        if value is not None:
            overrides[name] = value
    return overrides


def load_settings(config_path: Optional[str] = None) -> ToolkitSettings:
    """
    Build settings from defaults, an optional YAML file and the environment.

    Environment variables take precedence over the file.
    """
    data: Dict[str, Any] = {}
    if config_path:
        path = Path(config_path)
        if not path.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")
        with open(path, 'r', encoding='utf-8') as f:
            loaded = yaml.safe_load(f) or {}
        if not isinstance(loaded, dict):
            raise ValueError(f"Config file must contain a mapping: {config_path}")
        data.update(loaded)
    data.update(_env_overrides())
    return ToolkitSettings(**data)


DEFAULT_SETTINGS = ToolkitSettings()
