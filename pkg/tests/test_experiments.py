"""
Tests for the scenario registry and experiment runner.
"""

import pytest

from weaksig.core import experiments
from weaksig.core.experiments import SCENARIOS, linear_fit_r2, run_experiment
from weaksig.exceptions import UnknownScenarioError, ValidationError


def test_registry_names():
    assert set(SCENARIOS) == {
        "impulsive-sine",
        "timing",
        "snr-vs-samples",
        "ber",
        "gain",
        "inp-modes",
        "sr-sweep",
    }


def test_fig5_is_an_alias_of_impulsive_sine():
    assert experiments.get_scenario("fig5") is SCENARIOS["impulsive-sine"]
    assert "fig5" not in SCENARIOS


def test_unknown_scenario():
    with pytest.raises(UnknownScenarioError) as exc:
        run_experiment("nope", [0])
    assert "impulsive-sine" in exc.value.known


def test_rejects_empty_grid_and_seeds():
    with pytest.raises(ValidationError):
        run_experiment("inp-modes", [0], grid=[])
    with pytest.raises(ValidationError):
        run_experiment("inp-modes", [])


def test_linear_fit():
    assert linear_fit_r2([1, 2, 3, 4], [2, 4, 6, 8]) == pytest.approx(1.0)
    with pytest.raises(ValidationError):
        linear_fit_r2([1, 2], [1, 2])


def test_rows_ordered_by_seed_then_grid():
    reports = run_experiment("inp-modes", [3, 1], max_workers=2)
    assert [r.seed for r in reports] == [3, 3, 3, 1, 1, 1]
    assert [r.param for r in reports[:3]] == list(experiments.INP_MODE_GRID)
    for r in reports:
        assert r.config["pipeline"]["inp"]["mode"] == r.param
        assert r.stft_error is not None and r.stft_error >= 0


def test_runs_are_reproducible():
    first = run_experiment("inp-modes", [5], grid=["truncate"])
    second = run_experiment("inp-modes", [5], grid=["truncate"])
    assert first[0].snr_out_db == second[0].snr_out_db
    assert first[0].gain_alpha == second[0].gain_alpha


def test_snr_vs_samples_shares_input_snr():
    reports = run_experiment("snr-vs-samples", [0], grid=[1, 4])
    assert [r.param for r in reports] == [1, 4]
    assert reports[0].snr_in_db == reports[1].snr_in_db


def test_gain_rows_are_running_means():
    reports = run_experiment("gain", [0], grid=[1, 2])
    assert [r.param for r in reports] == [1, 2]
    assert all(0.0 <= r.gain_alpha <= 1.0 for r in reports)
    assert reports[1].wall_time_s >= reports[0].wall_time_s


def test_sr_sweep_records_drive_power():
    (report,) = run_experiment("sr-sweep", [0], grid=[0.5])
    assert report.drive_power is not None and report.drive_power > 0
    assert report.config["bsr"]["dt"] == 0.01


@pytest.mark.slow
def test_ber_falls_with_channel_snr():
    reports = run_experiment("ber", [0])
    assert [r.param for r in reports] == list(experiments.BER_GRID)
    rates = [r.ber for r in reports]
    assert all(later <= earlier for earlier, later in zip(rates, rates[1:]))
    assert rates[-1] <= 0.02


@pytest.mark.slow
def test_timing_grows_linearly():
    reports = run_experiment("timing", [0])
    assert [r.param for r in reports] == list(experiments.TIMING_GRID)
    r2 = linear_fit_r2([r.param for r in reports], [r.wall_time_s for r in reports])
    assert r2 >= 0.95
