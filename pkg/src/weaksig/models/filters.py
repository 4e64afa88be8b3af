"""Filter, detector and spectral data models."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..exceptions import ValidationError


def _readonly(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class CumulantSlice:
    """Fourth-order cumulant slice c4(m) for m = 0..max_lag."""

    values: np.ndarray

    def __post_init__(self):
        values = _readonly(self.values).reshape(-1)
        if values.size == 0:
            raise ValidationError("cumulant slice needs at least one lag")
        if not np.all(np.isfinite(values)):
            raise ValidationError("cumulant slice values must be finite")
        object.__setattr__(self, "values", values)

    @property
    def max_lag(self) -> int:
        return int(self.values.size - 1)


@dataclass(frozen=True, eq=False)
class CumulantFilter:
    """Linear-phase FIR taps h(0..2L) and output gain gamma."""

    taps: np.ndarray
    gain: float = 1.0

    def __post_init__(self):
        taps = _readonly(self.taps).reshape(-1)
        if taps.size % 2 != 1:
            raise ValidationError(f"filter needs an odd tap count (2L+1), got {taps.size}")
        if not np.array_equal(taps, taps[::-1]):
            raise ValidationError("filter taps must be mirror-symmetric")
        if not np.isfinite(self.gain):
            raise ValidationError("filter gain must be finite")
        object.__setattr__(self, "taps", taps)
        object.__setattr__(self, "gain", float(self.gain))

    @property
    def max_lag(self) -> int:
        return int((self.taps.size - 1) // 2)

    @property
    def group_delay(self) -> int:
        """Delay in samples of a symmetric causal FIR."""
        return self.max_lag


@dataclass(frozen=True, eq=False)
class DilatedConvLayer:
    """Kernel taps spaced `dilation` samples apart."""

    taps: np.ndarray
    dilation: int = 1

    def __post_init__(self):
        taps = _readonly(self.taps).reshape(-1)
        if taps.size < 1:
            raise ValidationError("dilated layer needs at least one tap")
        if self.dilation < 1:
            raise ValidationError(f"dilation must be >= 1, got {self.dilation}")
        object.__setattr__(self, "taps", taps)

    @property
    def span(self) -> int:
        """Samples covered by one application of the layer."""
        return (self.taps.size - 1) * self.dilation + 1


@dataclass(frozen=True)
class DetectorOutput:
    """Two-class softmax output: signal present vs noise only."""

    p_signal: float
    p_noise: float
    logits: Tuple[float, float]

    def __post_init__(self):
        if abs(self.p_signal + self.p_noise - 1.0) > 1e-12:
            raise ValidationError("detector probabilities must sum to 1")

    @property
    def is_signal(self) -> bool:
        return self.p_signal > self.p_noise


@dataclass(frozen=True, eq=False)
class StftFrameSet:
    """Per-frame one-sided DFT magnitudes and phases (frames x K)."""

    magnitudes: np.ndarray
    phases: np.ndarray
    frame_len: int
    hop: int

    def __post_init__(self):
        magnitudes = _readonly(self.magnitudes)
        phases = _readonly(self.phases)
        if magnitudes.ndim != 2 or magnitudes.shape != phases.shape:
            raise ValidationError("magnitudes and phases must be matching frames x K matrices")
        if np.any(magnitudes < 0):
            raise ValidationError("magnitudes must be non-negative")
        if not 0 < self.hop <= self.frame_len:
            raise ValidationError(f"hop must be in (0, frame_len], got {self.hop}")
        object.__setattr__(self, "magnitudes", magnitudes)
        object.__setattr__(self, "phases", phases)

    @property
    def n_frames(self) -> int:
        return int(self.magnitudes.shape[0])

    @property
    def n_bins(self) -> int:
        return int(self.magnitudes.shape[1])


@dataclass(frozen=True, eq=False)
class EstimatorContext:
    """Magnitude frames n-N..n+N concatenated into one vector."""

    frame_index: int
    context_half: int
    vector: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "vector", _readonly(self.vector).reshape(-1))
        if self.context_half < 0:
            raise ValidationError("context_half must be >= 0")
        if self.vector.size % (2 * self.context_half + 1) != 0:
            raise ValidationError("context vector length must be (2N+1)*K")

    @property
    def n_bins(self) -> int:
        return int(self.vector.size // (2 * self.context_half + 1))

    def frame(self, offset: int) -> np.ndarray:
        """Magnitude frame at relative position offset in -N..N."""
        if abs(offset) > self.context_half:
            raise ValidationError(f"offset {offset} outside context +/-{self.context_half}")
        k = self.n_bins
        start = (offset + self.context_half) * k
        return self.vector[start : start + k]
