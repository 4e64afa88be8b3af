"""Named evaluation scenarios and the runner that turns them into EvalReport rows.

Every scenario maps one seed to a list of reports, one per grid point, in
grid order. Wall times cover enhancement only; generation and metric
evaluation are excluded.
"""

import logging
import time
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import linregress

from ..exceptions import UnknownScenarioError, ValidationError
from ..models import (
    BsrSystem,
    ClipMode,
    EvalReport,
    InpConfig,
    ModulationSpec,
    NoiseSpec,
    PipelineConfig,
    Scheme,
    Signal,
)
from .batch_processor import BatchProcessor
from .bsr import drive_power, integrate
from .generation import add_noise, generate, noise_for_snr, symbol_bits, symbol_count
from .metrics import aligned_snr_db, ber, gain_coefficient, snr_db
from .modem import demodulate, resolve_polarity
from .pipeline import coherent_average, enhance, group_delay
from .rng import make_rng, spawn_seeds
from .stft import estimator_error

logger = logging.getLogger(__name__)

SAMPLE_RATE = 8000.0
CARRIER_HZ = 1000.0
PILOT_BITS = (1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 0)

Runner = Callable[[int, Sequence[Any]], List[EvalReport]]


@dataclass(frozen=True)
class Scenario:
    """A registered experiment: a per-seed runner and its default grid."""

    name: str
    description: str
    grid: tuple
    runner: Runner


def linear_fit_r2(x: Sequence[float], y: Sequence[float]) -> float:
    """Coefficient of determination of the least-squares line through (x, y)."""
    if len(x) != len(y) or len(x) < 3:
        raise ValidationError("a linear fit needs at least three matching points")
    return float(linregress(x, y).rvalue ** 2)


def _sine(sample_rate: float, n_samples: int, carrier_hz: float = CARRIER_HZ) -> Signal:
    mod = ModulationSpec(Scheme.SINE, carrier_hz, carrier_hz)
    return generate(mod, sample_rate, n_samples / sample_rate)


def _aligned(clean: Signal, enhanced: Signal, delay: int) -> Signal:
    """Enhanced output shifted back by `delay` and scaled onto clean."""
    shifted = np.concatenate((enhanced.samples[delay:], np.zeros(delay)))
    energy = float(np.dot(shifted, shifted))
    scale = float(np.dot(clean.samples, shifted)) / energy if energy > 0 else 0.0
    return clean.with_samples(scale * shifted)


def _timed_enhance(y: Signal, cfg: PipelineConfig) -> Tuple[Signal, float]:
    start = time.perf_counter()
    out = enhance(y, cfg)
    return out, time.perf_counter() - start


def _evaluate(
    scenario: str,
    seed: int,
    param: Any,
    clean: Signal,
    noisy: Signal,
    cfg: PipelineConfig,
    extra: Optional[Dict[str, Any]] = None,
) -> Tuple[EvalReport, Signal]:
    out, elapsed = _timed_enhance(noisy, cfg)
    delay = group_delay(cfg)
    aligned = _aligned(clean, out, delay)
    report = EvalReport(
        scenario=scenario,
        seed=seed,
        param=param,
        snr_in_db=snr_db(clean, noisy),
        snr_out_db=aligned_snr_db(clean, out, delay),
        gain_alpha=gain_coefficient(clean, out, delay),
        stft_error=estimator_error(lambda _: aligned, noisy, clean),
        wall_time_s=elapsed,
        config={"pipeline": cfg.to_dict(), **(extra or {})},
    )
    return report, out


def _impulsive_sine(seed: int, grid: Sequence[Any]) -> List[EvalReport]:
    """1 kHz sinusoid, about 60000 samples, impulsive channel at 1.1 dB input SNR."""
    clean = _sine(SAMPLE_RATE, 60000)
    cfg = PipelineConfig()
    reports = []
    for snr in grid:
        noise = noise_for_snr(clean, snr, impulse_prob=0.005, impulse_sigma=4.0, seed=seed)
        noisy = add_noise(clean, noise)
        extra = {"noise": asdict(noise)}
        report, _ = _evaluate("impulsive-sine", seed, snr, clean, noisy, cfg, extra)
        reports.append(report)
    return reports


def _timing(seed: int, grid: Sequence[Any]) -> List[EvalReport]:
    """Wall time of the default pipeline over batches of length-1024 signals."""
    clean = _sine(SAMPLE_RATE, 1024)
    cfg = PipelineConfig()
    delay = group_delay(cfg)
    reports = []
    for batch_seed, count in zip(spawn_seeds(seed, len(grid)), grid):
        seeds = spawn_seeds(batch_seed, int(count))
        batch = [add_noise(clean, noise_for_snr(clean, 0.0, 0.005, 4.0, s)) for s in seeds]
        start = time.perf_counter()
        outputs = [enhance(y, cfg) for y in batch]
        elapsed = time.perf_counter() - start
        reports.append(
            EvalReport(
                scenario="timing",
                seed=seed,
                param=int(count),
                snr_in_db=float(np.mean([snr_db(clean, y) for y in batch])),
                snr_out_db=float(np.mean([aligned_snr_db(clean, o, delay) for o in outputs])),
                gain_alpha=float(np.mean([gain_coefficient(clean, o, delay) for o in outputs])),
                wall_time_s=elapsed,
                config={"pipeline": cfg.to_dict(), "signal_length": len(clean)},
            )
        )
        logger.info(f"timing: {count} signals in {elapsed:.3f}s")
    return reports


def _snr_vs_samples(seed: int, grid: Sequence[Any]) -> List[EvalReport]:
    """Coherent averaging of N acquisitions at -10 dB, then enhancement."""
    clean = _sine(SAMPLE_RATE, 4096)
    cfg = PipelineConfig()
    seeds = spawn_seeds(seed, int(max(grid)))
    acquisitions = [add_noise(clean, noise_for_snr(clean, -10.0, seed=s)) for s in seeds]
    reports = []
    for count in grid:
        averaged = coherent_average(acquisitions[: int(count)])
        report, _ = _evaluate("snr-vs-samples", seed, int(count), clean, averaged, cfg)
        report.snr_in_db = snr_db(clean, acquisitions[0])
        reports.append(report)
    return reports


def _ber(seed: int, grid: Sequence[Any]) -> List[EvalReport]:
    """BPSK bit error rate after enhancement against channel SNR."""
    rng = make_rng(seed)
    payload = PILOT_BITS + tuple(int(b) for b in rng.integers(0, 2, 2000))
    mod = ModulationSpec(Scheme.BPSK, CARRIER_HZ, 1000.0, payload)
    clean = generate(mod, SAMPLE_RATE, len(payload) / mod.symbol_rate)
    cfg = PipelineConfig(fir_lag=4)
    delay = group_delay(cfg)
    sent = symbol_bits(mod, symbol_count(len(clean), SAMPLE_RATE, mod.symbol_rate))
    reports = []
    for noise_seed, channel_snr in zip(spawn_seeds(seed, len(grid)), grid):
        noisy = add_noise(clean, noise_for_snr(clean, channel_snr, seed=noise_seed))
        report, out = _evaluate("ber", seed, channel_snr, clean, noisy, cfg)
        bits = resolve_polarity(demodulate(out, mod, delay=delay), PILOT_BITS)
        report.ber = ber(sent[len(PILOT_BITS) :], bits[len(PILOT_BITS) :])
        reports.append(report)
    return reports


def _gain(seed: int, grid: Sequence[Any]) -> List[EvalReport]:
    """Running mean of the gain coefficient over independently enhanced acquisitions."""
    clean = _sine(SAMPLE_RATE, 4096)
    cfg = PipelineConfig()
    delay = group_delay(cfg)
    seeds = spawn_seeds(seed, int(max(grid)))
    alphas, snr_in, snr_out, times = [], [], [], []
    for s in seeds:
        noisy = add_noise(clean, noise_for_snr(clean, -5.0, 0.005, 2.0, s))
        out, elapsed = _timed_enhance(noisy, cfg)
        alphas.append(gain_coefficient(clean, out, delay))
        snr_in.append(snr_db(clean, noisy))
        snr_out.append(aligned_snr_db(clean, out, delay))
        times.append(elapsed)
    return [
        EvalReport(
            scenario="gain",
            seed=seed,
            param=int(count),
            snr_in_db=float(np.mean(snr_in[: int(count)])),
            snr_out_db=float(np.mean(snr_out[: int(count)])),
            gain_alpha=float(np.mean(alphas[: int(count)])),
            wall_time_s=float(np.sum(times[: int(count)])),
            config={"pipeline": cfg.to_dict()},
        )
        for count in grid
    ]


def _inp_modes(seed: int, grid: Sequence[Any]) -> List[EvalReport]:
    """The clipping laws compared on one impulsive realization."""
    clean = _sine(SAMPLE_RATE, 8000)
    noisy = add_noise(clean, noise_for_snr(clean, 0.0, 0.01, 6.0, seed))
    reports = []
    for mode in map(ClipMode, grid):
        cfg = PipelineConfig(inp=InpConfig(mode=mode))
        report, _ = _evaluate("inp-modes", seed, mode.value, clean, noisy, cfg)
        reports.append(report)
    return reports


SR_SYSTEM = BsrSystem(a=1.0, b=1.0, dt=0.01)
SR_AMPLITUDE = 0.3
SR_FREQUENCY = 0.01
SR_SAMPLE_RATE = 5.0
SR_DURATION = 1000.0


def _sr_sweep(seed: int, grid: Sequence[Any]) -> List[EvalReport]:
    """Drive-frequency output power of the double well against input noise level."""
    mod = ModulationSpec(Scheme.SINE, SR_FREQUENCY, SR_FREQUENCY, amplitude=SR_AMPLITUDE)
    carrier = generate(mod, SR_SAMPLE_RATE, SR_DURATION)
    reports = []
    for sigma in grid:
        noisy = add_noise(carrier, NoiseSpec(float(sigma), rng_seed=seed))
        start = time.perf_counter()
        post = integrate(SR_SYSTEM, noisy)
        elapsed = time.perf_counter() - start
        reports.append(
            EvalReport(
                scenario="sr-sweep",
                seed=seed,
                param=float(sigma),
                snr_in_db=snr_db(carrier, noisy),
                snr_out_db=aligned_snr_db(carrier, post),
                gain_alpha=gain_coefficient(carrier, post),
                drive_power=drive_power(post, SR_FREQUENCY),
                wall_time_s=elapsed,
                config={"bsr": asdict(SR_SYSTEM), "modulation": mod.to_dict()},
            )
        )
    return reports


TIMING_GRID = tuple(range(1000, 5001, 500))
AVERAGING_GRID = (10, 20, 30, 40, 50)
BER_GRID = (-5.0, 0.0, 5.0, 10.0)
GAIN_GRID = tuple(range(10, 101, 10))
INP_MODE_GRID = tuple(mode.value for mode in ClipMode)
SR_GRID = tuple(float(v) for v in np.linspace(0.05, 1.5, 12))

SCENARIOS: Dict[str, Scenario] = {
    s.name: s
    for s in (
        Scenario(
            "impulsive-sine", "sinusoid in impulsive noise at ~1.1 dB", (1.1,), _impulsive_sine
        ),
        Scenario("timing", "wall time against signal count", TIMING_GRID, _timing),
        Scenario("snr-vs-samples", "SNR against averaged copies", AVERAGING_GRID, _snr_vs_samples),
        Scenario("ber", "BPSK bit error rate against channel SNR", BER_GRID, _ber),
        Scenario("gain", "gain coefficient against acquisitions", GAIN_GRID, _gain),
        Scenario("inp-modes", "INP clipping laws compared", INP_MODE_GRID, _inp_modes),
        Scenario("sr-sweep", "double-well output power against noise level", SR_GRID, _sr_sweep),
    )
}

# Older name of the impulsive-sine scenario, still accepted by `weaksig eval`.
SCENARIO_ALIASES: Dict[str, str] = {"fig5": "impulsive-sine"}


def get_scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[SCENARIO_ALIASES.get(name, name)]
    except KeyError:
        raise UnknownScenarioError(name, list(SCENARIOS))


def run_experiment(
    scenario: str,
    seeds: Sequence[int],
    grid: Optional[Sequence[Any]] = None,
    max_workers: int = 1,
    quiet: bool = True,
) -> List[EvalReport]:
    """Run a scenario for every seed; rows are ordered by seed, then grid point."""
    scenario_def = get_scenario(scenario)
    points = tuple(grid) if grid is not None else scenario_def.grid
    if not points:
        raise ValidationError(f"scenario '{scenario}' needs a non-empty grid")
    if not seeds:
        raise ValidationError("at least one seed is required")

    logger.info(f"running {scenario} over {len(seeds)} seed(s), {len(points)} grid point(s)")
    result = BatchProcessor(max_workers).process(
        list(seeds),
        lambda seed: scenario_def.runner(int(seed), points),
        label=lambda seed: f"{scenario} seed {seed}",
        quiet=quiet,
        desc=scenario,
    )
    result.raise_first()
    return [report for reports in result.successful() for report in reports]
