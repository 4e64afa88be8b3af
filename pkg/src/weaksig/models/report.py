"""Report, dataset and run-manifest models."""

import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

from ..exceptions import ValidationError
from .signal import Signal

REPORT_SCHEMA_VERSION = 1

REPORT_COLUMNS = (
    "scenario",
    "seed",
    "param",
    "snr_in_db",
    "snr_out_db",
    "ber",
    "gain_alpha",
    "stft_error",
    "drive_power",
    "wall_time_s",
    "config",
)

Param = Union[int, float, str, None]


def _format_float(value: Optional[float]) -> str:
    if value is None:
        return ""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(float(value))


def _parse_float(text: str) -> Optional[float]:
    return float(text) if text != "" else None


@dataclass
class EvalReport:
    """One evaluated run: the row type of every experiment CSV."""

    scenario: str
    seed: int
    snr_in_db: float
    snr_out_db: float
    gain_alpha: float
    wall_time_s: float
    param: Param = None
    ber: Optional[float] = None
    stft_error: Optional[float] = None
    drive_power: Optional[float] = None
    config: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.wall_time_s >= 0:
            raise ValidationError(f"wall_time_s must be >= 0, got {self.wall_time_s}")
        for name in ("snr_in_db", "snr_out_db"):
            value = getattr(self, name)
            if math.isnan(value) or value == -math.inf:
                raise ValidationError(f"{name} must be finite or +inf, got {value}")
        for name in ("gain_alpha", "ber", "stft_error", "drive_power"):
            value = getattr(self, name)
            if value is not None and not math.isfinite(value):
                raise ValidationError(f"{name} must be finite, got {value}")

    @property
    def snr_gain_db(self) -> float:
        return self.snr_out_db - self.snr_in_db

    def to_row(self) -> Dict[str, str]:
        """Render as CSV cells in REPORT_COLUMNS order."""
        return {
            "scenario": self.scenario,
            "seed": str(self.seed),
            "param": "" if self.param is None else str(self.param),
            "snr_in_db": _format_float(self.snr_in_db),
            "snr_out_db": _format_float(self.snr_out_db),
            "ber": _format_float(self.ber),
            "gain_alpha": _format_float(self.gain_alpha),
            "stft_error": _format_float(self.stft_error),
            "drive_power": _format_float(self.drive_power),
            "wall_time_s": _format_float(self.wall_time_s),
            "config": json.dumps(self.config, sort_keys=True),
        }

    @classmethod
    def from_row(cls, row: Dict[str, str]) -> "EvalReport":
        param: Param = row["param"] or None
        if param is not None:
            for convert in (int, float):
                try:
                    param = convert(param)
                    break
                except ValueError:
                    continue
        return cls(
            scenario=row["scenario"],
            seed=int(row["seed"]),
            param=param,
            snr_in_db=float(row["snr_in_db"]),
            snr_out_db=float(row["snr_out_db"]),
            ber=_parse_float(row["ber"]),
            gain_alpha=float(row["gain_alpha"]),
            stft_error=_parse_float(row["stft_error"]),
            drive_power=_parse_float(row["drive_power"]),
            wall_time_s=float(row["wall_time_s"]),
            config=json.loads(row["config"]) if row["config"] else {},
        )


@dataclass(frozen=True)
class LabeledPair:
    """A generated sample before and after the bistable system."""

    pre: Signal
    post: Signal
    resonant: bool
    carrier_hz: float

    def __post_init__(self):
        if len(self.pre) != len(self.post):
            raise ValidationError("pre and post signals must have equal length")
        if self.pre.sample_rate != self.post.sample_rate:
            raise ValidationError("pre and post signals must share a sample rate")

    @property
    def one_hot(self) -> tuple:
        """(resonant, not resonant) label vector."""
        return (1, 0) if self.resonant else (0, 1)


@dataclass
class RunManifest:
    """Everything needed to replay one CLI invocation."""

    subcommand: str
    argv: List[str]
    config: Dict[str, Any]
    inputs: List[str] = field(default_factory=list)
    outputs: List[str] = field(default_factory=list)
    seed: Optional[int] = None
    version: str = ""
    report_schema: int = REPORT_SCHEMA_VERSION
    report_columns: List[str] = field(default_factory=lambda: list(REPORT_COLUMNS))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subcommand": self.subcommand,
            "argv": list(self.argv),
            "config": self.config,
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
            "seed": self.seed,
            "version": self.version,
            "report_schema": self.report_schema,
            "report_columns": list(self.report_columns),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunManifest":
        try:
            return cls(
                subcommand=data["subcommand"],
                argv=list(data["argv"]),
                config=dict(data.get("config", {})),
                inputs=list(data.get("inputs", [])),
                outputs=list(data.get("outputs", [])),
                seed=data.get("seed"),
                version=data.get("version", ""),
                report_schema=int(data.get("report_schema", REPORT_SCHEMA_VERSION)),
                report_columns=list(data.get("report_columns", REPORT_COLUMNS)),
            )
        except KeyError as e:
            raise ValidationError(f"manifest is missing field {e}")
