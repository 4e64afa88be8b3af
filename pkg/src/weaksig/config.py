"""Configuration loading.

Precedence, highest first: command-line flags, the TOML config file,
WEAKSIG_* environment variables (a `.env` file is read too), built-in
defaults.
"""

import os
from typing import Any, Dict, Mapping, Optional, Tuple

import tomli
from dotenv import load_dotenv

from .core.detection import DEFAULT_FLOOR
from .exceptions import ConfigError, ValidationError
from .models import BsrSystem, InpConfig, NlmConfig, PipelineConfig, Settings

TABLES = ("inp", "nlm", "fir", "bsr", "stages", "detect", "runtime")

ENV_CONFIG = "WEAKSIG_CONFIG"
ENV_LOG_LEVEL = "WEAKSIG_LOG_LEVEL"
ENV_MAX_WORKERS = "WEAKSIG_MAX_WORKERS"

Values = Dict[str, Dict[str, Any]]


def load_config(config_path: Optional[str] = None) -> Values:
    """
    Load a TOML config file.

    Args:
        config_path: Path to the file; WEAKSIG_CONFIG is used when omitted.
    Returns:
        Mapping of table name to its keys; empty when no file is configured.
    Raises:
        ConfigError: If the file is missing, unparsable or has unknown tables.
    """
    load_dotenv()
    path = config_path or os.getenv(ENV_CONFIG)
    if not path:
        return {}
    if not os.path.exists(path):
        raise ConfigError(f"Config file not found: {path}")
    try:
        with open(path, "rb") as f:
            values = tomli.load(f)
    except tomli.TOMLDecodeError as e:
        raise ConfigError(f"Invalid TOML in {path}", details=str(e))

    unknown = sorted(set(values) - set(TABLES))
    if unknown:
        raise ConfigError(
            f"Unknown config table(s): {', '.join(unknown)}",
            details=f"known tables: {', '.join(TABLES)}",
        )
    for table, content in values.items():
        if not isinstance(content, dict):
            raise ConfigError(f"[{table}] must be a table")
    return values


def merge(
    file_values: Mapping[str, Mapping[str, Any]], overrides: Mapping[str, Mapping[str, Any]]
) -> Values:
    """Overlay flag values on file values; None means "flag not given"."""
    merged: Values = {table: dict(content) for table, content in file_values.items()}
    for table, content in overrides.items():
        for key, value in content.items():
            if value is not None:
                merged.setdefault(table, {})[key] = value
    return merged


def resolve_pipeline_config(
    file_values: Mapping[str, Mapping[str, Any]],
    overrides: Optional[Mapping[str, Mapping[str, Any]]] = None,
) -> PipelineConfig:
    """
    Materialise a complete PipelineConfig from file values and flag overrides.

    Raises:
        ConfigError: On unknown keys or values the stage configs reject.
    """
    values = merge(file_values, overrides or {})
    stages = values.get("stages", {})
    bsr = values.get("bsr")
    try:
        return PipelineConfig(
            inp=InpConfig(**values.get("inp", {})),
            nlm=NlmConfig(**values.get("nlm", {})),
            fir_lag=int(values.get("fir", {}).get("lag", PipelineConfig.fir_lag)),
            bsr=BsrSystem(**bsr) if bsr else None,
            use_inp=bool(stages.get("inp", True)),
            use_bsr=bool(stages.get("bsr", False)),
            use_nlm=bool(stages.get("nlm", True)),
            use_fir=bool(stages.get("fir", True)),
        )
    except (TypeError, ValueError, ValidationError) as e:
        raise ConfigError(f"Invalid configuration: {e}")


def resolve_settings(
    file_values: Mapping[str, Mapping[str, Any]],
    overrides: Optional[Mapping[str, Any]] = None,
) -> Settings:
    """Runtime settings: flags, then [runtime], then WEAKSIG_* variables."""
    runtime: Dict[str, Any] = {}
    if os.getenv(ENV_LOG_LEVEL):
        runtime["log_level"] = os.getenv(ENV_LOG_LEVEL)
    if os.getenv(ENV_MAX_WORKERS):
        try:
            runtime["max_workers"] = int(os.environ[ENV_MAX_WORKERS])
        except ValueError:
            raise ConfigError(f"{ENV_MAX_WORKERS} must be an integer")
    runtime.update(file_values.get("runtime", {}))
    runtime.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return Settings(**runtime)
    except TypeError as e:
        raise ConfigError(f"Invalid [runtime] setting: {e}")


def resolve_detect(
    file_values: Mapping[str, Mapping[str, Any]],
    scorer: Optional[str] = None,
    floor: Optional[float] = None,
) -> Tuple[str, float]:
    """Scorer name and noise floor for the detect command."""
    detect = file_values.get("detect", {})
    name = scorer or detect.get("scorer", "energy")
    value = floor if floor is not None else float(detect.get("floor", DEFAULT_FLOOR))
    if not value > 0:
        raise ConfigError(f"noise floor must be positive, got {value}")
    return name, value
