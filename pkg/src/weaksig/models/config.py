"""Configuration data models for the enhancement stages."""

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

from ..exceptions import ConfigError, ValidationError

STAGES = ("inp", "bsr", "nlm", "fir")


class ClipMode(str, Enum):
    """How INP treats samples above the threshold."""

    INVERSE_SQUARE = "inverse_square"
    TRUNCATE = "truncate"
    ZERO = "zero"


@dataclass(frozen=True)
class InpConfig:
    """Impulse-noise preprocessor settings."""

    tau0: float = 1.5
    mode: ClipMode = ClipMode.INVERSE_SQUARE

    def __post_init__(self):
        object.__setattr__(self, "mode", ClipMode(self.mode))
        if not math.isfinite(self.tau0) or self.tau0 < 0:
            raise ValidationError(f"tau0 must be finite and >= 0, got {self.tau0}")


@dataclass(frozen=True)
class NlmConfig:
    """Non-local means window geometry and smoothing.

    search_half_width=None selects the default of 16 * patch_half_width;
    full_search=True ignores it and compares against every sample.
    h=None selects 0.6 times the robust noise estimate of the input.
    """

    patch_half_width: int = 3
    search_half_width: Optional[int] = None
    h: Optional[float] = None
    kernel_sigma: float = 0.0
    full_search: bool = False

    def __post_init__(self):
        if self.patch_half_width < 0:
            raise ValidationError(f"patch_half_width must be >= 0, got {self.patch_half_width}")
        if self.search_half_width is not None and self.search_half_width < self.patch_half_width:
            raise ValidationError(
                f"search_half_width ({self.search_half_width}) must be >= "
                f"patch_half_width ({self.patch_half_width})"
            )
        if self.h is not None and not (math.isfinite(self.h) and self.h > 0):
            raise ValidationError(f"h must be positive, got {self.h}")
        if not (math.isfinite(self.kernel_sigma) and self.kernel_sigma >= 0):
            raise ValidationError(f"kernel_sigma must be >= 0, got {self.kernel_sigma}")

    def search_radius(self, length: int) -> int:
        """Search half-width actually used for a signal of the given length."""
        if self.full_search:
            return max(length - 1, 0)
        if self.search_half_width is None:
            return 16 * self.patch_half_width
        return self.search_half_width


@dataclass(frozen=True)
class BsrSystem:
    """Quartic double-well dx/dt = a*x - b*x**3 + input(t)."""

    a: float = 1.0
    b: float = 1.0
    dt: float = 0.01
    x0: float = 0.0

    def __post_init__(self):
        if not self.a > 0:
            raise ValidationError(f"a must be positive, got {self.a}")
        if not self.b > 0:
            raise ValidationError(f"b must be positive, got {self.b}")
        if not self.dt > 0:
            raise ValidationError(f"dt must be positive, got {self.dt}")
        if self.dt * self.a >= 0.1:
            raise ValidationError(
                "integration step too large", details=f"dt*a = {self.dt * self.a:g} >= 0.1"
            )
        if not math.isfinite(self.x0):
            raise ValidationError("x0 must be finite")

    @property
    def well(self) -> float:
        """Position of the stable fixed points, sqrt(a/b)."""
        return math.sqrt(self.a / self.b)


@dataclass(frozen=True)
class PipelineConfig:
    """Stage settings and enable flags for the enhancement chain."""

    inp: InpConfig = field(default_factory=InpConfig)
    nlm: NlmConfig = field(default_factory=NlmConfig)
    fir_lag: int = 64
    bsr: Optional[BsrSystem] = None
    use_inp: bool = True
    use_bsr: bool = False
    use_nlm: bool = True
    use_fir: bool = True

    def __post_init__(self):
        if not any(self.enabled(stage) for stage in STAGES):
            raise ConfigError("at least one stage enabled is required")
        if self.fir_lag < 0:
            raise ValidationError(f"fir_lag must be >= 0, got {self.fir_lag}")
        if self.use_bsr and self.bsr is None:
            object.__setattr__(self, "bsr", BsrSystem())

    def enabled(self, stage: str) -> bool:
        return bool(getattr(self, f"use_{stage}"))

    @property
    def active_stages(self) -> tuple:
        return tuple(stage for stage in STAGES if self.enabled(stage))

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["inp"]["mode"] = self.inp.mode.value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PipelineConfig":
        bsr = data.get("bsr")
        return cls(
            inp=InpConfig(**data.get("inp", {})),
            nlm=NlmConfig(**data.get("nlm", {})),
            fir_lag=int(data.get("fir_lag", 64)),
            bsr=BsrSystem(**bsr) if bsr else None,
            use_inp=bool(data.get("use_inp", True)),
            use_bsr=bool(data.get("use_bsr", False)),
            use_nlm=bool(data.get("use_nlm", True)),
            use_fir=bool(data.get("use_fir", True)),
        )


@dataclass
class Settings:
    """Runtime settings that do not change any numerical result."""

    log_level: str = "INFO"
    log_file: Optional[str] = None
    max_workers: int = 1
    quiet: bool = False
    plain: bool = False

    def __post_init__(self):
        self._validate()

    def _validate(self) -> None:
        if self.max_workers < 1:
            raise ConfigError("max_workers must be at least 1")
        if self.log_level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR"):
            raise ConfigError(f"Invalid log_level: {self.log_level}")
        self.log_level = self.log_level.upper()
