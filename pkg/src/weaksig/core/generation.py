"""Synthetic waveform generation and the Bernoulli-Gaussian noise channel."""

import logging
import math

import numpy as np

from ..exceptions import ValidationError
from ..models import ModulationSpec, NoiseSpec, Scheme, Signal
from .rng import make_rng

logger = logging.getLogger(__name__)


def sample_count(duration: float, sample_rate: float) -> int:
    """floor(duration * sample_rate), tolerant of binary rounding."""
    return int(math.floor(duration * sample_rate + 1e-9))


def symbol_index(n_samples: int, sample_rate: float, symbol_rate: float) -> np.ndarray:
    """Symbol number of every sample."""
    n = np.arange(n_samples, dtype=np.float64)
    return np.floor(n * symbol_rate / sample_rate + 1e-9).astype(np.int64)


def symbol_count(n_samples: int, sample_rate: float, symbol_rate: float) -> int:
    """Number of complete symbols in n_samples."""
    return sample_count(n_samples / sample_rate, symbol_rate)


def symbol_bits(mod: ModulationSpec, n_symbols: int) -> np.ndarray:
    """Bits carried by the first n_symbols symbols (payload repeated cyclically)."""
    if not mod.payload_bits:
        raise ValidationError(f"{mod.scheme.value} carries no bits")
    payload = np.asarray(mod.payload_bits, dtype=np.int8)
    return np.resize(payload, n_symbols)


def generate(mod: ModulationSpec, sample_rate: float, duration: float) -> Signal:
    """Synthesize floor(duration * sample_rate) samples of the modulated waveform."""
    if not duration > 0:
        raise ValidationError(f"duration must be positive, got {duration}")
    if not sample_rate > 0:
        raise ValidationError(f"sample_rate must be positive, got {sample_rate}")
    mod.check_nyquist(sample_rate)

    n_samples = sample_count(duration, sample_rate)
    if n_samples < 1:
        raise ValidationError(
            "duration too short", details=f"{duration} s at {sample_rate} Hz is under one sample"
        )
    n = np.arange(n_samples, dtype=np.float64)

    if mod.scheme is Scheme.SINE:
        wave = np.sin(2 * np.pi * mod.carrier_hz * n / sample_rate)
    else:
        symbols = symbol_index(n_samples, sample_rate, mod.symbol_rate)
        bits = symbol_bits(mod, int(symbols[-1]) + 1)[symbols]
        if mod.scheme is Scheme.BPSK:
            wave = np.where(bits == 1, -1.0, 1.0) * np.sin(
                2 * np.pi * mod.carrier_hz * n / sample_rate
            )
        else:
            tones = np.where(
                bits == 1,
                mod.carrier_hz + mod.symbol_rate / 2,
                mod.carrier_hz - mod.symbol_rate / 2,
            )
            phase = np.concatenate(([0.0], np.cumsum(tones[:-1]))) * (2 * np.pi / sample_rate)
            wave = np.sin(phase)

    logger.debug(
        f"generated {mod.scheme.value} at {mod.carrier_hz:g} Hz: {n_samples} samples "
        f"@ {sample_rate:g} Hz"
    )
    return Signal(mod.amplitude * wave, sample_rate)


def add_noise(s: Signal, noise: NoiseSpec) -> Signal:
    """Add Gaussian background plus Bernoulli-gated Gaussian impulses.

    out = s + g + b * i with g ~ N(0, gaussian_sigma^2), b ~ Bernoulli(impulse_prob),
    i ~ N(0, impulse_sigma^2). The three streams are always drawn in that order
    from a generator seeded by noise.rng_seed.
    """
    if noise.is_silent:
        return s.with_samples(s.samples.copy())

    rng = make_rng(noise.rng_seed)
    n = len(s)
    background = rng.normal(0.0, noise.gaussian_sigma, n)
    hits = rng.random(n) < noise.impulse_prob
    impulses = rng.normal(0.0, noise.impulse_sigma, n)
    return s.with_samples(s.samples + background + np.where(hits, impulses, 0.0))


def noise_for_snr(
    clean: Signal,
    snr_db: float,
    impulse_prob: float = 0.0,
    impulse_sigma: float = 0.0,
    seed: int = 0,
) -> NoiseSpec:
    """NoiseSpec whose expected power puts `clean` at the requested SNR.

    The impulsive share p * impulse_sigma^2 is fixed; the Gaussian sigma takes
    the rest of the noise budget.
    """
    power = float(np.mean(clean.samples**2))
    if power == 0:
        raise ValidationError("clean signal has zero energy")
    budget = power / 10 ** (snr_db / 10)
    impulsive = impulse_prob * impulse_sigma**2
    if impulsive > budget:
        raise ValidationError(
            "impulse power exceeds the noise budget",
            details=f"{impulsive:g} > {budget:g} at {snr_db:g} dB",
        )
    return NoiseSpec(math.sqrt(budget - impulsive), impulse_prob, impulse_sigma, seed)
