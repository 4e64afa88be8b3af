"""Short-time Fourier magnitudes and the magnitude-domain estimator error."""

import logging
from typing import Callable, Union

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.signal import get_window

from ..exceptions import ValidationError
from ..models import EstimatorContext, Signal, StftFrameSet

logger = logging.getLogger(__name__)

DEFAULT_FRAME_LEN = 256
DEFAULT_HOP = 128
DEFAULT_WINDOW = "hann"

TimeDomainEstimator = Callable[[Signal], Signal]


class FrameEstimator:
    """Estimates one clean magnitude frame from a context of noisy frames.

    Subclasses implement estimate_frame; estimator_error hands them the
    (2N+1)-frame context of every frame.
    """

    def estimate_frame(self, context: EstimatorContext) -> np.ndarray:
        raise NotImplementedError


Estimator = Union[TimeDomainEstimator, FrameEstimator]


def stft(
    s: Signal,
    frame_len: int = DEFAULT_FRAME_LEN,
    hop: int = DEFAULT_HOP,
    window: Union[str, np.ndarray] = DEFAULT_WINDOW,
) -> StftFrameSet:
    """One-sided windowed DFT of every frame (K = frame_len // 2 + 1 bins).

    Frames start every `hop` samples; a trailing partial frame is dropped.
    """
    if frame_len < 1:
        raise ValidationError(f"frame_len must be positive, got {frame_len}")
    if frame_len > len(s):
        raise ValidationError(
            "signal shorter than one frame", details=f"{len(s)} < frame_len {frame_len}"
        )
    if isinstance(window, str):
        taper = get_window(window, frame_len)
    else:
        taper = np.asarray(window, dtype=np.float64)
    if taper.shape != (frame_len,):
        raise ValidationError(f"window length {taper.size} != frame_len {frame_len}")
    if not 0 < hop <= frame_len:
        raise ValidationError(f"hop must be in (0, {frame_len}], got {hop}")

    frames = sliding_window_view(s.samples, frame_len)[::hop] * taper
    spectrum = np.fft.rfft(frames, axis=1)
    return StftFrameSet(np.abs(spectrum), np.angle(spectrum), frame_len, hop)


def frame_error(est: np.ndarray, ref: np.ndarray) -> float:
    """Squared Euclidean distance between two magnitude frames."""
    a = np.asarray(est, dtype=np.float64).reshape(-1)
    b = np.asarray(ref, dtype=np.float64).reshape(-1)
    if a.size != b.size:
        raise ValidationError(f"frame lengths differ: {a.size} != {b.size}")
    diff = a - b
    return float(np.dot(diff, diff))


def build_context(frames: StftFrameSet, n: int, context_half: int) -> EstimatorContext:
    """Concatenate magnitude frames n-N..n+N, repeating the edge frames."""
    if not 0 <= n < frames.n_frames:
        raise ValidationError(f"frame index {n} outside [0, {frames.n_frames})")
    if context_half < 0:
        raise ValidationError(f"context_half must be >= 0, got {context_half}")
    indices = np.clip(np.arange(n - context_half, n + context_half + 1), 0, frames.n_frames - 1)
    return EstimatorContext(n, context_half, frames.magnitudes[indices].reshape(-1))


def estimator_error(
    f: Estimator,
    noisy: Signal,
    clean: Signal,
    frame_len: int = DEFAULT_FRAME_LEN,
    hop: int = DEFAULT_HOP,
    window: Union[str, np.ndarray] = DEFAULT_WINDOW,
    context_half: int = 0,
) -> float:
    """Mean over frames of ||estimated magnitude - clean magnitude||^2.

    Time-domain estimators are applied to the whole noisy signal and the
    result is analysed frame by frame. FrameEstimator instances get the
    (2N+1)-frame context of each noisy frame. Phase never enters the error.
    """
    if len(noisy) != len(clean):
        raise ValidationError(f"signal lengths differ: {len(noisy)} != {len(clean)}")
    reference = stft(clean, frame_len, hop, window)

    if isinstance(f, FrameEstimator):
        observed = stft(noisy, frame_len, hop, window)
        errors = [
            frame_error(f.estimate_frame(build_context(observed, n, context_half)), ref)
            for n, ref in enumerate(reference.magnitudes)
        ]
    else:
        estimate = f(noisy)
        if len(estimate) != len(clean):
            raise ValidationError("estimator changed the signal length")
        magnitudes = stft(estimate, frame_len, hop, window).magnitudes
        errors = [frame_error(est, ref) for est, ref in zip(magnitudes, reference.magnitudes)]
    return float(np.mean(errors))
