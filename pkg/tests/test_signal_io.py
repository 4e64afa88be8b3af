"""
Unit tests for signal, tap and magnitude files.
Covers the binary layout and the byte offsets reported for corrupt input.
"""

import csv
import struct

import numpy as np
import pytest

from weaksig.exceptions import SignalFormatError, ValidationError
from weaksig.models import CumulantFilter, Signal, StftFrameSet
from weaksig.services import signal_io


def _sgnl(rate, samples):
    return b"SGNL" + struct.pack("<I", rate) + struct.pack(f"<{len(samples)}d", *samples)


def test_binary_layout():
    data = signal_io.encode_sgnl(Signal([1.0, -2.5], 8000))
    assert data == _sgnl(8000, [1.0, -2.5])
    decoded = signal_io.decode_sgnl(data)
    assert decoded.sample_rate == 8000.0
    assert np.array_equal(decoded.samples, [1.0, -2.5])


@pytest.mark.parametrize(
    "data, offset",
    [
        (b"SGN", 3),
        (b"XXXX" + _sgnl(8000, [1.0])[4:], 0),
        (_sgnl(0, [1.0]), 4),
        (_sgnl(8000, []), 8),
        (_sgnl(8000, [1.0]) + b"\x00\x00\x00", 16),
        (_sgnl(8000, [1.0, 2.0, float("nan")]), 24),
        (_sgnl(8000, [float("inf")]), 8),
    ],
)
def test_corrupt_input_offsets(data, offset):
    with pytest.raises(SignalFormatError) as exc:
        signal_io.decode_sgnl(data, path="bad.sgnl")
    assert exc.value.offset == offset
    assert str(exc.value).startswith("bad.sgnl: ")


def test_fractional_rate_cannot_be_encoded():
    with pytest.raises(ValidationError):
        signal_io.encode_sgnl(Signal([1.0], 8000.5))


def test_file_round_trip(tmp_path):
    s = Signal(np.random.default_rng(0).normal(size=50), 44100)
    path = str(tmp_path / "s.sgnl")
    signal_io.write_signal(path, s)
    back = signal_io.read_signal(path)
    assert back.sample_rate == 44100.0
    assert np.array_equal(back.samples, s.samples)


def test_csv_keeps_exact_values(tmp_path):
    s = Signal([0.1, 1 / 3, -2e-300], 8000)
    path = str(tmp_path / "s.csv")
    signal_io.write_signal(path, s)
    back = signal_io.read_signal(path, sample_rate=1000.0)
    assert back.sample_rate == 1000.0
    assert np.array_equal(back.samples, s.samples)


def test_csv_error_offset(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_bytes(b"1.0\n2.0\nabc\n")
    with pytest.raises(SignalFormatError) as exc:
        signal_io.read_signal(str(path))
    assert exc.value.offset == 8


def test_empty_csv(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_bytes(b"\n\n")
    with pytest.raises(SignalFormatError):
        signal_io.read_signal(str(path))


def test_taps_file(tmp_path):
    filt = CumulantFilter(np.array([0.25, -1.0, 0.25]), gain=0.4)
    path = str(tmp_path / "taps.csv")
    signal_io.write_taps(path, filt)
    with open(path, encoding="utf-8") as f:
        assert f.readline().startswith("# gain=0.4 group_delay=1")
    back = signal_io.read_taps(path)
    assert np.array_equal(back.taps, filt.taps)
    assert back.gain == 0.4


def test_magnitudes_file(tmp_path):
    frames = StftFrameSet(np.arange(6.0).reshape(2, 3), np.zeros((2, 3)), 4, 2)
    path = str(tmp_path / "mags.csv")
    signal_io.write_magnitudes(path, frames)
    with open(path, encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["frame", "bin_0", "bin_1", "bin_2"]
    assert rows[2] == ["1", "3.0", "4.0", "5.0"]
