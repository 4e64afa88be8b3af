"""
Unit and property tests for the impulse-noise preprocessor.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from weaksig.core import inp
from weaksig.exceptions import ValidationError
from weaksig.models import ClipMode, InpConfig, Signal

samples = arrays(np.float64, st.integers(1, 64), elements=st.floats(-1e6, 1e6))
modes = st.sampled_from(list(ClipMode))
thresholds = st.floats(1e-3, 1e3)


def test_threshold_uses_median_magnitude():
    y = Signal([1.0, -2.0, 3.0, -4.0], 8000)
    assert inp.threshold(y, InpConfig(tau0=1.5)) == pytest.approx(10.0)


def test_threshold_even_length_median():
    assert inp.threshold(Signal([1.0, 3.0], 8000), InpConfig(tau0=0.0)) == 2.0


def test_inverse_square_law():
    y = Signal([2.0, -4.0, 0.5], 8000)
    out = inp.clip(y, 1.0)
    assert np.allclose(out.samples, [0.25, -0.0625, 0.5])


def test_truncate_and_zero_modes():
    y = Signal([2.0, -4.0, 0.5], 8000)
    assert np.array_equal(inp.clip(y, 1.0, ClipMode.TRUNCATE).samples, [1.0, -1.0, 0.5])
    assert np.array_equal(inp.clip(y, 1.0, ClipMode.ZERO).samples, [0.0, 0.0, 0.5])


@settings(deadline=None)
@given(x=samples, tau=thresholds, mode=modes)
def test_clip_is_bounded_odd_and_idempotent(x, tau, mode):
    y = Signal(x, 8000)
    once = inp.clip(y, tau, mode)
    assert np.all(np.abs(once.samples) <= tau)
    assert np.array_equal(inp.clip(-y, tau, mode).samples, -once.samples)
    assert np.array_equal(inp.clip(once, tau, mode).samples, once.samples)


def test_rejects_non_positive_threshold():
    with pytest.raises(ValidationError):
        inp.clip(Signal([1.0], 8000), 0.0)


def test_normalize_peak_is_one():
    out = inp.normalize(Signal([0.5, -2.0, 1.0], 8000))
    assert np.max(np.abs(out.samples)) == 1.0
    with pytest.raises(ValidationError):
        inp.normalize(Signal(np.zeros(3), 8000))


def test_inp_removes_spike(sine):
    clean = sine()
    spiked = clean.samples.copy()
    spiked[10] += 100.0
    out = inp.inp(clean.with_samples(spiked), InpConfig())
    assert abs(out.samples[10]) < 0.1
    keep = np.arange(len(clean)) != 10
    assert np.allclose(out.samples[keep], clean.samples[keep])


def test_inp_rejects_mostly_zero_signal():
    with pytest.raises(ValidationError):
        inp.inp(Signal([0.0, 0.0, 0.0, 1.0], 8000), InpConfig())
