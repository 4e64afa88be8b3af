"""Coherent demodulation for the BER experiments."""

from typing import Sequence

import numpy as np

from ..exceptions import ValidationError
from ..models import ModulationSpec, Scheme, Signal
from .generation import symbol_count


def _symbol_bounds(n_symbols: int, sample_rate: float, symbol_rate: float) -> np.ndarray:
    edges = np.arange(n_symbols + 1, dtype=np.float64) * sample_rate / symbol_rate
    return np.ceil(edges - 1e-9).astype(np.int64)


def demodulate(s: Signal, mod: ModulationSpec, delay: int = 0) -> np.ndarray:
    """Decide one bit per complete symbol.

    BPSK takes the sign of the correlation with the carrier; BFSK picks the
    tone with the larger quadrature energy. Sample n of symbol k is read from
    s[n + delay] so a known group delay can be compensated.
    """
    if mod.scheme is Scheme.SINE:
        raise ValidationError("an unmodulated sine carries no bits")
    if delay < 0:
        raise ValidationError(f"delay must be >= 0, got {delay}")

    n_symbols = symbol_count(len(s), s.sample_rate, mod.symbol_rate)
    if n_symbols < 1:
        raise ValidationError("signal shorter than one symbol")
    bounds = _symbol_bounds(n_symbols, s.sample_rate, mod.symbol_rate)
    x = np.concatenate((s.samples[delay:], np.zeros(min(delay, len(s)))))
    t = np.arange(len(s), dtype=np.float64) / s.sample_rate

    tones = (mod.carrier_hz - mod.symbol_rate / 2, mod.carrier_hz + mod.symbol_rate / 2)
    decisions = np.empty(n_symbols, dtype=np.int8)
    for k in range(n_symbols):
        seg = slice(bounds[k], bounds[k + 1])
        if mod.scheme is Scheme.BPSK:
            corr = np.dot(x[seg], np.sin(2 * np.pi * mod.carrier_hz * t[seg]))
            decisions[k] = 1 if corr < 0 else 0
        else:
            energies = []
            for tone in tones:
                arg = 2 * np.pi * tone * t[seg]
                in_phase = np.dot(x[seg], np.cos(arg))
                quadrature = np.dot(x[seg], np.sin(arg))
                energies.append(in_phase**2 + quadrature**2)
            decisions[k] = 1 if energies[1] > energies[0] else 0
    return decisions


def resolve_polarity(bits: Sequence[int], pilot: Sequence[int]) -> np.ndarray:
    """Invert every decision when the known pilot prefix arrived mostly inverted."""
    decided = np.asarray(bits, dtype=np.int8)
    known = np.asarray(pilot, dtype=np.int8)
    if known.size == 0 or known.size > decided.size:
        raise ValidationError("pilot must be non-empty and no longer than the bit stream")
    mismatches = int(np.count_nonzero(decided[: known.size] != known))
    if 2 * mismatches > known.size:
        return 1 - decided
    return decided
