"""
Pytest configuration and fixtures for weaksig tests.
Resets global logging and error state so CLI runs do not leak into later tests.
"""

import logging

import numpy as np
import pytest

from weaksig.core.generation import generate
from weaksig.handlers import error_handler
from weaksig.models import ModulationSpec, Scheme, Signal


@pytest.fixture(autouse=True)
def reset_global_state():
    """
    Drop handlers installed by setup_logging and forget recorded errors.
    """
    yield
    error_handler.clear_errors()
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)


@pytest.fixture
def sine():
    """
    Factory for unit-amplitude sinusoids of n samples.
    """

    def make(
        n: int = 800,
        carrier_hz: float = 1000.0,
        sample_rate: float = 8000.0,
        amplitude: float = 1.0,
    ) -> Signal:
        mod = ModulationSpec(Scheme.SINE, carrier_hz, carrier_hz, amplitude=amplitude)
        return generate(mod, sample_rate, n / sample_rate)

    return make


@pytest.fixture
def gaussian():
    """
    Factory for seeded white Gaussian noise.
    """

    def make(n: int, sigma: float = 1.0, seed: int = 0, sample_rate: float = 8000.0) -> Signal:
        rng = np.random.default_rng(seed)
        return Signal(rng.normal(0.0, sigma, n), sample_rate)

    return make
