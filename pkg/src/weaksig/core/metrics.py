"""Scalar quality metrics: SNR, BER, gain coefficient."""

import math
from typing import Sequence, Tuple

import numpy as np

from ..exceptions import ValidationError
from ..models import Signal


def _check_lengths(clean: Signal, other: Signal) -> None:
    if len(clean) != len(other):
        raise ValidationError(f"signal lengths differ: {len(clean)} != {len(other)}")


def snr_db(clean: Signal, noisy: Signal) -> float:
    """10*log10(sum clean^2 / sum (noisy - clean)^2); +inf for a zero residual."""
    _check_lengths(clean, noisy)
    signal_energy = float(np.dot(clean.samples, clean.samples))
    if signal_energy == 0:
        raise ValidationError("clean signal has zero energy")
    residual = noisy.samples - clean.samples
    noise_energy = float(np.dot(residual, residual))
    if noise_energy == 0:
        return math.inf
    return 10 * math.log10(signal_energy / noise_energy)


def aligned_snr_db(clean: Signal, enhanced: Signal, delay: int = 0) -> float:
    """SNR after removing a known delay and the least-squares gain.

    enhanced[n + delay] is compared with clean[n]; the enhanced waveform is
    scaled by <clean, enhanced> / <enhanced, enhanced> first, which makes the
    measure blind to the amplitude and polarity changes of normalization and
    cumulant filtering.
    """
    ref, est = _trim_delay(clean, enhanced, delay)
    energy = float(np.dot(est, est))
    scale = float(np.dot(ref, est)) / energy if energy > 0 else 0.0
    return snr_db(Signal(ref, clean.sample_rate), Signal(scale * est, clean.sample_rate))


def ber(sent_bits: Sequence[int], recovered_bits: Sequence[int]) -> float:
    """Fraction of positions where the two bit sequences differ."""
    sent = np.asarray(sent_bits, dtype=np.int64).reshape(-1)
    recovered = np.asarray(recovered_bits, dtype=np.int64).reshape(-1)
    if sent.size != recovered.size:
        raise ValidationError(f"bit sequence lengths differ: {sent.size} != {recovered.size}")
    if sent.size == 0:
        raise ValidationError("bit sequences must be non-empty")
    return float(np.count_nonzero(sent != recovered)) / sent.size


def gain_coefficient(clean: Signal, enhanced: Signal, delay: int = 0) -> float:
    """Squared normalized cross-correlation at lag `delay`, in [0, 1]."""
    ref, est = _trim_delay(clean, enhanced, delay)
    clean_energy = float(np.dot(ref, ref))
    if clean_energy == 0:
        raise ValidationError("clean signal has zero energy")
    enhanced_energy = float(np.dot(est, est))
    if enhanced_energy == 0:
        return 0.0
    alpha = float(np.dot(ref, est)) ** 2 / (clean_energy * enhanced_energy)
    return min(max(alpha, 0.0), 1.0)


def dominant_bin(s: Signal) -> int:
    """Index of the strongest one-sided DFT bin."""
    return int(np.argmax(np.abs(np.fft.rfft(s.samples))))


def _trim_delay(clean: Signal, enhanced: Signal, delay: int) -> Tuple[np.ndarray, np.ndarray]:
    _check_lengths(clean, enhanced)
    if not 0 <= delay < len(clean):
        raise ValidationError(f"delay must be in [0, {len(clean)}), got {delay}")
    if delay == 0:
        return clean.samples, enhanced.samples
    return clean.samples[:-delay], enhanced.samples[delay:]
