"""
Configuration management for noisy-sumsets.
Loads YAML, JSON or key=value files and resolves them against flags and environment.
"""

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

import yaml

from ..production.error_handling import InvalidParametersError

JOBS_ENV_VAR = "NOISY_SUMSETS_JOBS"
OUTPUT_FORMATS = ("text", "json", "csv")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

DEFAULTS: Dict[str, Any] = {
    "search": {"jobs": 1, "witness_cap": 8, "ceiling": 64, "budget_ms": None},
    "cache": {"directory": None},
    "random": {"seed": 0},
    "output": {"format": "text"},
    "logging": {"level": "WARNING"},
}


def _parse_scalar(text: str) -> Any:
    value = text.strip()
    lowered = value.lower()
    if lowered in ("true", "yes", "on"):
        return True
    if lowered in ("false", "no", "off"):
        return False
    if lowered in ("", "none", "null"):
        return None
    if value.lstrip("-").isdigit():
        return int(value)
    return value


def parse_key_value(text: str) -> Dict[str, Any]:
    """Parse ``key = value`` lines; ``#`` starts a comment and dotted keys nest."""
    config: Dict[str, Any] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidParametersError(f"config line {number} has no '=': {raw!r}")
        key, value = line.split("=", 1)
        parts = [p.strip() for p in key.strip().split(".") if p.strip()]
        if not parts:
            raise InvalidParametersError(f"config line {number} has an empty key")
        node = config
        for part in parts[:-1]:
            node = node.setdefault(part, {})
        node[parts[-1]] = _parse_scalar(value)
    return config


class ToolConfig:
    """Dict-backed configuration with typed accessors."""

    def __init__(
        self, config_path: Optional[str] = None, config_dict: Optional[Dict] = None
    ):
        if config_dict:
            self.config = config_dict
        elif config_path:
            self.config = self._load_config(config_path)
        else:
            self.config = {}

    def _load_config(self, config_path: str) -> Dict[str, Any]:
        """Load configuration from file."""
        path = Path(config_path)

        if not path.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")

        with open(path, "r") as f:
            if path.suffix in (".yaml", ".yml"):
                loaded = yaml.safe_load(f)
            elif path.suffix == ".json":
                loaded = json.load(f)
            else:
                loaded = parse_key_value(f.read())
        return loaded or {}

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by dotted key."""
        keys = key.split(".")
        value = self.config

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    @property
    def jobs(self) -> int:
        return self.get("search.jobs", DEFAULTS["search"]["jobs"])

    @property
    def witness_cap(self) -> int:
        return self.get("search.witness_cap", DEFAULTS["search"]["witness_cap"])

    @property
    def search_ceiling(self) -> int:
        return self.get("search.ceiling", DEFAULTS["search"]["ceiling"])

    @property
    def budget_ms(self) -> Optional[int]:
        return self.get("search.budget_ms")

    @property
    def cache_dir(self) -> Optional[str]:
        return self.get("cache.directory")

    @property
    def seed(self) -> int:
        return self.get("random.seed", DEFAULTS["random"]["seed"])

    @property
    def output_format(self) -> str:
        return self.get("output.format", DEFAULTS["output"]["format"])

    @property
    def log_level(self) -> str:
        return str(self.get("logging.level", DEFAULTS["logging"]["level"])).upper()

    def validate(self) -> List[str]:
        """Validate configuration and return list of issues."""
        issues = []

        for key in ("search.jobs", "search.witness_cap", "search.ceiling"):
            value = self.get(key)
            if value is not None and (not isinstance(value, int) or value < 1):
                issues.append(f"{key} must be a positive integer")

        budget = self.get("search.budget_ms")
        if budget is not None and (not isinstance(budget, int) or budget < 1):
            issues.append("search.budget_ms must be a positive integer")

        seed = self.get("random.seed")
        if seed is not None and (not isinstance(seed, int) or seed < 0):
            issues.append("random.seed must be a non-negative integer")

        if self.output_format not in OUTPUT_FORMATS:
            issues.append(f"output.format must be one of {', '.join(OUTPUT_FORMATS)}")

        if self.log_level not in LOG_LEVELS:
            issues.append(f"logging.level must be one of {', '.join(LOG_LEVELS)}")

        return issues

    def to_dict(self) -> Dict[str, Any]:
        return self.config.copy()

    def merge_with_defaults(self, defaults: Optional[Dict[str, Any]] = None) -> "ToolConfig":
        """Merge configuration with defaults."""
        merged = self._deep_merge(defaults or DEFAULTS, self.config)
        return ToolConfig(config_dict=merged)

    def _deep_merge(
        self, base: Dict[str, Any], override: Dict[str, Any]
    ) -> Dict[str, Any]:
        """Deep merge two dictionaries."""
        result = base.copy()
        for key, value in override.items():
            if (
                key in result
                and isinstance(result[key], dict)
                and isinstance(value, dict)
            ):
                result[key] = self._deep_merge(result[key], value)
            else:
                result[key] = value
        return result


@dataclass
class SearchSettings:
    """Resolved settings handed to the search and sweep layers."""

    jobs: int = 1
    witness_cap: int = 8
    search_ceiling: int = 64
    budget_ms: Optional[int] = None
    cache_dir: Optional[str] = None
    seed: int = 0
    output_format: str = "text"
    log_level: str = "WARNING"

    def to_tool_config(self) -> ToolConfig:
        return ToolConfig(
            config_dict={
                "search": {
                    "jobs": self.jobs,
                    "witness_cap": self.witness_cap,
                    "ceiling": self.search_ceiling,
                    "budget_ms": self.budget_ms,
                },
                "cache": {"directory": self.cache_dir},
                "random": {"seed": self.seed},
                "output": {"format": self.output_format},
                "logging": {"level": self.log_level},
            }
        )


def load_config_from_file(config_path: str) -> ToolConfig:
    """Load configuration from file with validation."""
    try:
        config = ToolConfig(config_path=config_path)
    except (OSError, ValueError, yaml.YAMLError) as e:
        raise InvalidParametersError(f"Cannot read config {config_path}: {e}") from e

    issues = config.validate()
    if issues:
        raise InvalidParametersError(f"Configuration validation failed: {issues}")

    return config


def resolve_settings(
    config: Optional[ToolConfig] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> SearchSettings:
    """Flags beat the environment, which beats the config file, which beats defaults.

    ``overrides`` holds flag values keyed like SearchSettings fields; None means
    the flag was not given.
    """
    merged = (config or ToolConfig()).merge_with_defaults()
    environ = os.environ if environ is None else environ

    settings = SearchSettings(
        jobs=merged.jobs,
        witness_cap=merged.witness_cap,
        search_ceiling=merged.search_ceiling,
        budget_ms=merged.budget_ms,
        cache_dir=merged.cache_dir,
        seed=merged.seed,
        output_format=merged.output_format,
        log_level=merged.log_level,
    )

    env_jobs = environ.get(JOBS_ENV_VAR)
    if env_jobs:
        if not env_jobs.strip().isdigit() or int(env_jobs) < 1:
            raise InvalidParametersError(f"{JOBS_ENV_VAR} must be a positive integer")
        settings.jobs = int(env_jobs)

    for name, value in (overrides or {}).items():
        if value is not None and hasattr(settings, name):
            setattr(settings, name, value)

    return settings


def create_sample_config_file(output_path: str) -> None:
    """Create a sample configuration file."""
    sample_config = {
        "search": {"jobs": 4, "witness_cap": 8, "ceiling": 64, "budget_ms": 2000},
        "cache": {"directory": ".cache/noisy_sumsets"},
        "random": {"seed": 0},
        "output": {"format": "json"},
        "logging": {"level": "INFO"},
    }

    with open(output_path, "w") as f:
        yaml.dump(sample_config, f, default_flow_style=False, indent=2)
