"""Run configuration: tolerances, seed and worker bound.

Sources are merged in fixed precedence: built-in defaults, then a config
file (TOML, or INI with a ``[spiralvar]`` section), then the
``SPIRALVAR_JOBS`` environment variable (worker bound only), then explicit
command-line flags.
"""

from __future__ import annotations

import configparser
import dataclasses
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import ParameterError

__all__ = ["ENV_JOBS", "RunConfig", "load_config"]

ENV_JOBS = "SPIRALVAR_JOBS"


@dataclass(frozen=True)
class RunConfig:
    """Tolerances and execution knobs shared by the CLI subcommands."""

    sandwich_slack: float = 0.05
    seminorm_ratio_floor: float = 0.9
    rel_eps: float = 1e-12
    seed: int = 0
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.jobs < 1:
            raise ParameterError(f"jobs must be >= 1, got {self.jobs}")
        for name in ("sandwich_slack", "seminorm_ratio_floor", "rel_eps"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be positive")
        if self.seminorm_ratio_floor > 1:
            raise ParameterError(
                f"seminorm_ratio_floor is a fraction of the optimal constant, "
                f"must be <= 1, got {self.seminorm_ratio_floor}"
            )


_FIELDS = {f.name: f.type for f in dataclasses.fields(RunConfig)}


def _coerce(name: str, value) -> float | int:
    if name in ("seed", "jobs"):
        return int(value)
    return float(value)


def _read_file(path: Path) -> dict:
    if path.suffix.lower() == ".toml":
        import tomli

        with open(path, "rb") as fh:
            doc = tomli.load(fh)
        if "spiralvar" in doc and isinstance(doc["spiralvar"], dict):
            doc = doc["spiralvar"]
    else:
        parser = configparser.ConfigParser()
        parser.read(path)
        section = "spiralvar" if parser.has_section("spiralvar") else parser.default_section
        doc = dict(parser[section])
    unknown = set(doc) - set(_FIELDS)
    if unknown:
        raise ParameterError(f"unknown config keys in {path.name}: {sorted(unknown)}")
    return doc


def load_config(
    path: str | Path | None = None,
    *,
    jobs: int | None = None,
    seed: int | None = None,
) -> RunConfig:
    """Build the effective configuration (defaults < file < env < flags)."""
    values: dict = {}
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise ParameterError(f"config file not found: {path}")
        for k, v in _read_file(path).items():
            values[k] = _coerce(k, v)
    env_jobs = os.environ.get(ENV_JOBS)
    if env_jobs is not None:
        try:
            values["jobs"] = int(env_jobs)
        except ValueError as e:
            raise ParameterError(f"{ENV_JOBS} must be an integer, got {env_jobs!r}") from e
    if jobs is not None:
        values["jobs"] = jobs
    if seed is not None:
        values["seed"] = seed
    return RunConfig(**values)
