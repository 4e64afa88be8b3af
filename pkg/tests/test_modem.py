"""
Unit tests for coherent demodulation and pilot-based polarity resolution.
"""

import numpy as np
import pytest

from weaksig.core.generation import generate
from weaksig.core.modem import demodulate, resolve_polarity
from weaksig.exceptions import ValidationError
from weaksig.models import ModulationSpec, Scheme

BITS = (1, 0, 1, 1, 0, 0, 1, 0)


@pytest.mark.parametrize("scheme", [Scheme.BPSK, Scheme.BFSK])
def test_clean_signal_demodulates_exactly(scheme):
    mod = ModulationSpec(scheme, 1000.0, 100.0, BITS)
    s = generate(mod, 8000.0, len(BITS) / 100.0)
    assert list(demodulate(s, mod)) == list(BITS)


def test_delay_is_compensated():
    mod = ModulationSpec(Scheme.BPSK, 1000.0, 100.0, BITS)
    s = generate(mod, 8000.0, len(BITS) / 100.0)
    delayed = s.with_samples(np.concatenate((np.zeros(3), s.samples[:-3])))
    assert list(demodulate(delayed, mod, delay=3)) == list(BITS)


def test_sine_has_no_bits():
    mod = ModulationSpec(Scheme.SINE, 1000.0, 100.0)
    with pytest.raises(ValidationError):
        demodulate(generate(mod, 8000.0, 0.1), mod)


def test_polarity_inverted_by_pilot():
    pilot = (1, 0, 1, 1)
    inverted = [0, 1, 0, 0, 1, 1]
    assert list(resolve_polarity(inverted, pilot)) == [1, 0, 1, 1, 0, 0]
    assert list(resolve_polarity([1, 0, 1, 1, 0, 0], pilot)) == [1, 0, 1, 1, 0, 0]
    with pytest.raises(ValidationError):
        resolve_polarity([1, 0], pilot)
