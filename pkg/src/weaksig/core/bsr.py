"""Bistable stochastic resonance and the paired before/after dataset."""

import logging
import math
from typing import List, Sequence

import numpy as np

from ..exceptions import DivergenceError, ValidationError
from ..models import BsrSystem, LabeledPair, ModulationSpec, NoiseSpec, Scheme, Signal
from .batch_processor import BatchProcessor
from .generation import add_noise, generate
from .rng import spawn_seeds

logger = logging.getLogger(__name__)


def substeps(sys: BsrSystem, sample_rate: float) -> int:
    """Euler steps per input sample: the fewest whose length does not exceed dt."""
    return max(1, math.ceil(1.0 / (sample_rate * sys.dt) - 1e-9))


def integrate(sys: BsrSystem, input: Signal) -> Signal:
    """Forward-Euler solution of dx/dt = a*x - b*x^3 + input(t).

    The input is held constant across each sample period, which is split into
    equal sub-steps no longer than sys.dt. Output sample n is the state at the
    end of sample period n.
    """
    steps = substeps(sys, input.sample_rate)
    h = 1.0 / (input.sample_rate * steps)
    a, b = sys.a, sys.b
    limit = 10 * sys.well
    x = sys.x0
    states: List[float] = []
    for index, drive in enumerate(input.samples.tolist()):
        for _ in range(steps):
            x = x + h * (a * x - b * x * x * x + drive)
        if not abs(x) <= limit:
            raise DivergenceError(
                "bistable integration diverged; reduce dt or the input level",
                index=index,
                state=x,
            )
        states.append(x)
    return input.with_samples(states)


def drive_bin(n_samples: int, sample_rate: float, frequency: float) -> int:
    """One-sided DFT bin nearest to frequency."""
    k = int(round(frequency * n_samples / sample_rate))
    if not 0 <= k <= n_samples // 2:
        raise ValidationError(f"{frequency:g} Hz is outside the DFT range of this signal")
    return k


def drive_power(s: Signal, frequency: float) -> float:
    """Power of the sinusoidal component in the bin nearest to frequency."""
    k = drive_bin(len(s), s.sample_rate, frequency)
    amplitude = 2 * abs(np.fft.rfft(s.samples)[k]) / len(s)
    return float(amplitude**2 / 2)


def build_dataset(
    mods: Sequence[ModulationSpec],
    sys: BsrSystem,
    noise: NoiseSpec,
    count: int,
    seed: int,
    sample_rate: float,
    duration: float,
    max_workers: int = 1,
    quiet: bool = True,
) -> List[LabeledPair]:
    """Generate `count` labelled (pre, post) pairs.

    Pair i uses mods[i % len(mods)] and a noise seed derived from (seed, i);
    post = integrate(sys, pre + noise). A pair is resonant when its post
    signal holds more power at the carrier than its pre signal.
    """
    if count <= 0:
        raise ValidationError(f"count must be positive, got {count}")
    if not mods:
        raise ValidationError("at least one modulation is required")

    seeds = spawn_seeds(seed, count)

    def make_pair(index: int) -> LabeledPair:
        mod = mods[index % len(mods)]
        pre = generate(mod, sample_rate, duration)
        post = integrate(sys, add_noise(pre, noise.with_seed(seeds[index])))
        resonant = drive_power(post, mod.carrier_hz) > drive_power(pre, mod.carrier_hz)
        return LabeledPair(pre=pre, post=post, resonant=resonant, carrier_hz=mod.carrier_hz)

    result = BatchProcessor(max_workers).process(
        list(range(count)), make_pair, label=lambda i: f"pair {i}", quiet=quiet, desc="Pairs"
    )
    result.raise_first()
    pairs: List[LabeledPair] = result.successful()
    logger.info(f"built {len(pairs)} pairs, {sum(p.resonant for p in pairs)} resonant")
    return pairs


def resonance_sweep(
    sys: BsrSystem,
    amplitude: float,
    frequency: float,
    sigmas: Sequence[float],
    seeds: Sequence[int],
    sample_rate: float,
    duration: float,
) -> np.ndarray:
    """Mean drive-frequency output power for each noise level.

    Every sigma reuses the same seeds so neighbouring grid points differ only
    in noise scale.
    """
    carrier = generate(
        ModulationSpec(Scheme.SINE, frequency, frequency, amplitude=amplitude),
        sample_rate,
        duration,
    )
    powers = np.empty(len(sigmas), dtype=np.float64)
    for i, sigma in enumerate(sigmas):
        runs = [
            drive_power(integrate(sys, add_noise(carrier, NoiseSpec(sigma, rng_seed=s))), frequency)
            for s in seeds
        ]
        powers[i] = float(np.mean(runs))
        logger.debug(f"sigma={sigma:.3g}: drive power {powers[i]:.4g}")
    return powers
