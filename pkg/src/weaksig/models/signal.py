"""Waveform, noise and modulation data models."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, Tuple

import numpy as np

from ..exceptions import ValidationError

DEFAULT_SAMPLE_RATE = 8000.0


def _frozen_array(values: Iterable[float]) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Signal:
    """A uniformly sampled real-valued waveform.

    Samples are stored as a read-only float64 array so a Signal can be shared
    between threads without copying.
    """

    samples: np.ndarray
    sample_rate: float = DEFAULT_SAMPLE_RATE

    def __post_init__(self):
        samples = _frozen_array(self.samples)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", float(self.sample_rate))
        self._validate()

    def _validate(self) -> None:
        if self.samples.size == 0:
            raise ValidationError("Signal must contain at least one sample")
        if not np.isfinite(self.sample_rate) or self.sample_rate <= 0:
            raise ValidationError(f"sample_rate must be positive, got {self.sample_rate}")
        if not np.all(np.isfinite(self.samples)):
            bad = int(np.flatnonzero(~np.isfinite(self.samples))[0])
            raise ValidationError("Signal samples must be finite", details=f"first at index {bad}")

    def __len__(self) -> int:
        return int(self.samples.size)

    @property
    def duration(self) -> float:
        """Duration in seconds."""
        return len(self) / self.sample_rate

    def with_samples(self, samples: Iterable[float]) -> "Signal":
        """Return a new Signal at the same sample rate."""
        return Signal(np.asarray(samples, dtype=np.float64), self.sample_rate)

    def __neg__(self) -> "Signal":
        return self.with_samples(-self.samples)

    def __repr__(self) -> str:
        return f"Signal(n={len(self)}, sample_rate={self.sample_rate:g})"


@dataclass(frozen=True)
class NoiseSpec:
    """Bernoulli-Gaussian noise: Gaussian background plus sparse Gaussian impulses."""

    gaussian_sigma: float = 0.0
    impulse_prob: float = 0.0
    impulse_sigma: float = 0.0
    rng_seed: int = 0

    def __post_init__(self):
        if not self.gaussian_sigma >= 0:
            raise ValidationError(f"gaussian_sigma must be >= 0, got {self.gaussian_sigma}")
        if not 0.0 <= self.impulse_prob <= 1.0:
            raise ValidationError(f"impulse_prob must be in [0, 1], got {self.impulse_prob}")
        if not self.impulse_sigma >= 0:
            raise ValidationError(f"impulse_sigma must be >= 0, got {self.impulse_sigma}")
        if not 0 <= self.rng_seed < 2**64:
            raise ValidationError(f"rng_seed must be a 64-bit unsigned value, got {self.rng_seed}")

    @property
    def is_silent(self) -> bool:
        return self.gaussian_sigma == 0 and (self.impulse_prob == 0 or self.impulse_sigma == 0)

    @property
    def expected_power(self) -> float:
        """Expected noise power per sample."""
        return self.gaussian_sigma**2 + self.impulse_prob * self.impulse_sigma**2

    def with_seed(self, seed: int) -> "NoiseSpec":
        return NoiseSpec(self.gaussian_sigma, self.impulse_prob, self.impulse_sigma, seed)


class Scheme(str, Enum):
    """Supported modulation schemes."""

    BPSK = "bpsk"
    BFSK = "bfsk"
    SINE = "sine"


@dataclass(frozen=True)
class ModulationSpec:
    """How to synthesize a test waveform.

    BFSK places its two tones at carrier_hz -/+ symbol_rate/2.
    """

    scheme: Scheme = Scheme.SINE
    carrier_hz: float = 1000.0
    symbol_rate: float = 100.0
    payload_bits: Tuple[int, ...] = field(default_factory=tuple)
    amplitude: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        object.__setattr__(self, "payload_bits", tuple(int(b) for b in self.payload_bits))
        if self.carrier_hz <= 0:
            raise ValidationError(f"carrier_hz must be positive, got {self.carrier_hz}")
        if self.symbol_rate <= 0:
            raise ValidationError(f"symbol_rate must be positive, got {self.symbol_rate}")
        if self.symbol_rate > self.carrier_hz:
            raise ValidationError(
                f"symbol_rate ({self.symbol_rate}) must not exceed carrier_hz ({self.carrier_hz})"
            )
        if any(b not in (0, 1) for b in self.payload_bits):
            raise ValidationError("payload_bits must contain only 0 and 1")
        if self.scheme is not Scheme.SINE and not self.payload_bits:
            raise ValidationError(f"{self.scheme.value} modulation needs payload_bits")
        if not np.isfinite(self.amplitude) or self.amplitude < 0:
            raise ValidationError(f"amplitude must be finite and >= 0, got {self.amplitude}")

    @property
    def highest_tone_hz(self) -> float:
        if self.scheme is Scheme.BFSK:
            return self.carrier_hz + self.symbol_rate / 2
        return self.carrier_hz

    def check_nyquist(self, sample_rate: float) -> None:
        """Reject tones at or above half the sample rate."""
        if self.highest_tone_hz >= sample_rate / 2:
            raise ValidationError(
                "Nyquist violation",
                details=f"tone {self.highest_tone_hz:g} Hz >= {sample_rate / 2:g} Hz",
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scheme": self.scheme.value,
            "carrier_hz": self.carrier_hz,
            "symbol_rate": self.symbol_rate,
            "payload_bits": "".join(str(b) for b in self.payload_bits),
            "amplitude": self.amplitude,
        }
