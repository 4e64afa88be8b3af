"""
Unit tests for configuration loading and precedence.
Flags beat the TOML file, which beats WEAKSIG_* variables, which beat defaults.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weaksig import config
from weaksig.exceptions import ConfigError
from weaksig.models import ClipMode


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    """
    Run each test in an empty directory with no WEAKSIG_* variables set.
    """
    monkeypatch.chdir(tmp_path)
    for name in (config.ENV_CONFIG, config.ENV_LOG_LEVEL, config.ENV_MAX_WORKERS):
        monkeypatch.delenv(name, raising=False)


def _write(tmp_path, text):
    path = tmp_path / "weaksig.toml"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_no_config_file():
    assert config.load_config() == {}


def test_config_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv(config.ENV_CONFIG, _write(tmp_path, "[fir]\nlag = 8\n"))
    assert config.load_config() == {"fir": {"lag": 8}}


@pytest.mark.parametrize(
    "text",
    ["[fir\nlag = 8\n", "[unknown]\nx = 1\n", "inp = 3\n"],
)
def test_invalid_files(tmp_path, text):
    with pytest.raises(ConfigError):
        config.load_config(_write(tmp_path, text))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        config.load_config(str(tmp_path / "missing.toml"))


def test_pipeline_precedence(tmp_path):
    values = config.load_config(
        _write(tmp_path, '[fir]\nlag = 8\n[inp]\nmode = "zero"\n[stages]\nnlm = false\n')
    )
    cfg = config.resolve_pipeline_config(values)
    assert cfg.fir_lag == 8
    assert cfg.inp.mode is ClipMode.ZERO
    assert cfg.active_stages == ("inp", "fir")

    cfg = config.resolve_pipeline_config(values, {"fir": {"lag": 16}, "inp": {"mode": None}})
    assert cfg.fir_lag == 16
    assert cfg.inp.mode is ClipMode.ZERO


def test_pipeline_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        config.resolve_pipeline_config({"nlm": {"patch": 3}})
    with pytest.raises(ConfigError):
        config.resolve_pipeline_config({"nlm": {"patch_half_width": -1}})


def test_all_stages_disabled_is_config_error():
    with pytest.raises(ConfigError):
        config.resolve_pipeline_config({"stages": {"inp": False, "nlm": False, "fir": False}})


def test_bsr_table_enables_system():
    cfg = config.resolve_pipeline_config({"bsr": {"dt": 0.005}, "stages": {"bsr": True}})
    assert cfg.bsr.dt == 0.005
    assert "bsr" in cfg.active_stages


def test_settings_precedence(monkeypatch):
    monkeypatch.setenv(config.ENV_LOG_LEVEL, "debug")
    monkeypatch.setenv(config.ENV_MAX_WORKERS, "3")
    assert config.resolve_settings({}).log_level == "DEBUG"
    assert config.resolve_settings({}).max_workers == 3
    from_file = config.resolve_settings({"runtime": {"log_level": "warning"}})
    assert from_file.log_level == "WARNING"
    from_flag = config.resolve_settings(
        {"runtime": {"log_level": "warning"}}, {"log_level": "ERROR", "max_workers": None}
    )
    assert from_flag.log_level == "ERROR"
    assert from_flag.max_workers == 3


def test_settings_rejects_bad_values(monkeypatch):
    monkeypatch.setenv(config.ENV_MAX_WORKERS, "many")
    with pytest.raises(ConfigError):
        config.resolve_settings({})
    monkeypatch.delenv(config.ENV_MAX_WORKERS)
    with pytest.raises(ConfigError):
        config.resolve_settings({"runtime": {"colour": True}})


def test_detect_settings():
    assert config.resolve_detect({}) == ("energy", 1e-2)
    assert config.resolve_detect({"detect": {"scorer": "dilated", "floor": 0.5}}) == (
        "dilated",
        0.5,
    )
    assert config.resolve_detect({"detect": {"floor": 0.5}}, floor=0.1) == ("energy", 0.1)
    with pytest.raises(ConfigError):
        config.resolve_detect({}, floor=0.0)


@given(
    lag=st.integers(0, 512),
    overrides=st.dictionaries(st.sampled_from(["lag", "other"]), st.none()),
)
def test_none_overrides_keep_file_values(lag, overrides):
    merged = config.merge({"fir": {"lag": lag}}, {"fir": overrides})
    assert merged["fir"]["lag"] == lag
