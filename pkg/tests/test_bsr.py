"""
Tests for the bistable stochastic-resonance integrator and dataset builder.
"""

import numpy as np
import pytest

from weaksig.core import bsr
from weaksig.core.experiments import (
    SR_AMPLITUDE,
    SR_DURATION,
    SR_FREQUENCY,
    SR_GRID,
    SR_SAMPLE_RATE,
    SR_SYSTEM,
)
from weaksig.exceptions import DivergenceError, ValidationError
from weaksig.models import BsrSystem, ModulationSpec, NoiseSpec, Scheme, Signal


def _drive(n=100, rate=1.0):
    t = np.arange(n) / rate
    return Signal(0.3 * np.sin(2 * np.pi * 0.05 * t), rate)


def test_substeps_cover_sample_period():
    assert bsr.substeps(BsrSystem(dt=0.01), 8000.0) == 1
    assert bsr.substeps(BsrSystem(dt=0.01), 5.0) == 20
    assert bsr.substeps(BsrSystem(dt=0.03), 10.0) == 4


def test_euler_error_halves_with_step():
    """
    Test first-order convergence against a much finer step.
    """
    drive = _drive()
    reference = bsr.integrate(BsrSystem(dt=0.05 / 64, x0=0.5), drive).samples
    coarse = bsr.integrate(BsrSystem(dt=0.05, x0=0.5), drive).samples
    fine = bsr.integrate(BsrSystem(dt=0.025, x0=0.5), drive).samples
    ratio = np.max(np.abs(coarse - reference)) / np.max(np.abs(fine - reference))
    assert 1.5 <= ratio <= 2.5


@pytest.mark.parametrize("x0, well", [(0.5, 1.0), (-0.5, -1.0)])
def test_relaxes_into_nearest_well(x0, well):
    silent = Signal(np.zeros(1000), 10.0)
    out = bsr.integrate(BsrSystem(x0=x0), silent)
    assert out.samples[-1] == pytest.approx(well, abs=1e-6)


def test_divergence_is_reported():
    with pytest.raises(DivergenceError) as exc:
        bsr.integrate(BsrSystem(), Signal(np.full(10, 1e6), 100.0))
    assert exc.value.index == 0


def test_drive_power_of_sine(sine):
    assert bsr.drive_power(sine(800, amplitude=0.5), 1000.0) == pytest.approx(0.125)
    with pytest.raises(ValidationError):
        bsr.drive_bin(800, 8000.0, 5000.0)


def test_build_dataset_is_reproducible():
    mods = [
        ModulationSpec(Scheme.SINE, 1000.0, 1000.0, amplitude=0.3),
        ModulationSpec(Scheme.BPSK, 1000.0, 100.0, (1, 0), amplitude=0.3),
    ]
    kwargs = dict(
        sys=BsrSystem(),
        noise=NoiseSpec(0.5),
        count=4,
        seed=11,
        sample_rate=8000.0,
        duration=0.01,
    )
    first = bsr.build_dataset(mods, **kwargs)
    threaded = bsr.build_dataset(mods, max_workers=3, **kwargs)
    assert len(first) == 4
    for a, b in zip(first, threaded):
        assert np.array_equal(a.post.samples, b.post.samples)
        assert a.resonant == b.resonant
        assert len(a.pre) == len(a.post) == 80
    assert np.array_equal(first[0].pre.samples, first[2].pre.samples)


def test_build_dataset_rejects_empty_inputs():
    with pytest.raises(ValidationError):
        bsr.build_dataset([], BsrSystem(), NoiseSpec(), 1, 0, 8000.0, 0.01)
    with pytest.raises(ValidationError):
        bsr.build_dataset([ModulationSpec()], BsrSystem(), NoiseSpec(), 0, 0, 8000.0, 0.01)


@pytest.mark.slow
def test_resonance_peaks_at_intermediate_noise():
    powers = bsr.resonance_sweep(
        SR_SYSTEM,
        SR_AMPLITUDE,
        SR_FREQUENCY,
        sigmas=(0.1, 1.2, 3.0),
        seeds=(1, 2),
        sample_rate=SR_SAMPLE_RATE,
        duration=1000.0,
    )
    assert powers[1] > powers[0]
    assert powers[1] > powers[2]


@pytest.mark.parametrize("seed", range(3))
def test_response_is_odd_in_the_input(seed):
    rng = np.random.default_rng(seed)
    drive = Signal(rng.normal(0, 0.8, 400), 10.0)
    up = bsr.integrate(BsrSystem(), drive).samples
    down = bsr.integrate(BsrSystem(), drive.with_samples(-drive.samples)).samples
    assert np.array_equal(down, -up)


def test_rest_states_stay_put():
    silent = Signal(np.zeros(500), 10.0)
    assert np.array_equal(bsr.integrate(BsrSystem(), silent).samples, np.zeros(500))
    system = BsrSystem(a=2.0, b=0.5, x0=2.0)
    assert system.well == pytest.approx(2.0)
    resting = bsr.integrate(system, silent).samples
    assert np.allclose(resting, system.well, rtol=0, atol=1e-12)


def test_silent_carrier_is_not_resonant():
    mods = [ModulationSpec(Scheme.SINE, 1000.0, 1000.0, amplitude=0.0)]
    pairs = bsr.build_dataset(mods, BsrSystem(), NoiseSpec(0.0), 1, 0, 8000.0, 0.01)
    assert len(pairs) == 1
    assert not pairs[0].resonant
    assert not np.any(pairs[0].post.samples)


@pytest.mark.slow
def test_resonance_sweep_has_interior_maximum():
    powers = bsr.resonance_sweep(
        SR_SYSTEM,
        SR_AMPLITUDE,
        SR_FREQUENCY,
        sigmas=SR_GRID,
        seeds=range(10),
        sample_rate=SR_SAMPLE_RATE,
        duration=SR_DURATION,
    )
    assert len(powers) == 12
    assert 0 < int(np.argmax(powers)) < len(SR_GRID) - 1


def test_integration_adds_no_noise_of_its_own():
    drive = _drive(300, rate=10.0)
    first = bsr.integrate(BsrSystem(x0=0.2), drive).samples
    assert np.array_equal(bsr.integrate(BsrSystem(x0=0.2), drive).samples, first)
