"""Dilated convolution, receptive fields and the two-class softmax detector."""

import logging
import math
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.special import softmax

from ..exceptions import ValidationError
from ..models import DetectorOutput, DilatedConvLayer, Signal

logger = logging.getLogger(__name__)

# (logit_signal, logit_noise) for a waveform
FeatureScorer = Callable[[Signal], Tuple[float, float]]

STACK_KERNEL = 3
STACK_DILATIONS = (1, 2, 4)
DEFAULT_FLOOR = 1e-2


def dilated_conv(layer: DilatedConvLayer, x: Signal) -> Signal:
    """out(n) = sum_t taps(t) * x(n - t*r), zero before the first sample."""
    n = len(x)
    samples = x.samples
    out = np.zeros(n, dtype=np.float64)
    for t, tap in enumerate(layer.taps):
        shift = t * layer.dilation
        if shift >= n:
            break
        out[shift:] += tap * samples[: n - shift]
    return x.with_samples(out)


def stack_receptive_field(kernel_sizes: Sequence[int], dilations: Sequence[int]) -> int:
    """Input span seen by one output of stacked dilated layers: 1 + sum (k - 1) * r."""
    if len(kernel_sizes) != len(dilations):
        raise ValidationError("kernel_sizes and dilations must have the same length")
    if any(k < 1 for k in kernel_sizes) or any(r < 1 for r in dilations):
        raise ValidationError("kernel sizes and dilations must be >= 1")
    return 1 + sum((k - 1) * r for k, r in zip(kernel_sizes, dilations))


def receptive_field(layer_index: int) -> int:
    """Cumulative receptive field after layer i of the kernel-3, dilation 1/2/4 stack.

    Equals 2**(i + 1) - 1: 3, 7 and 15.
    """
    if layer_index not in (1, 2, 3):
        raise ValidationError(f"layer_index must be 1, 2 or 3, got {layer_index}")
    return stack_receptive_field([STACK_KERNEL] * layer_index, STACK_DILATIONS[:layer_index])


class DilatedStack:
    """Sequential dilated layers applied in order."""

    def __init__(self, layers: Sequence[DilatedConvLayer]):
        if not layers:
            raise ValidationError("a dilated stack needs at least one layer")
        self.layers = tuple(layers)

    @classmethod
    def default(cls) -> "DilatedStack":
        """Three moving-average layers with kernel 3 and dilations 1, 2, 4."""
        taps = np.full(STACK_KERNEL, 1.0 / STACK_KERNEL)
        return cls([DilatedConvLayer(taps, r) for r in STACK_DILATIONS])

    @property
    def receptive_field(self) -> int:
        return 1 + sum(layer.span - 1 for layer in self.layers)

    def __call__(self, x: Signal) -> Signal:
        for layer in self.layers:
            x = dilated_conv(layer, x)
        return x


def softmax2(logits: Tuple[float, float]) -> DetectorOutput:
    """Two-class softmax over (logit_signal, logit_noise)."""
    values = np.asarray(logits, dtype=np.float64)
    if values.shape != (2,) or not np.all(np.isfinite(values)):
        raise ValidationError(f"softmax2 needs two finite logits, got {logits}")
    probs = softmax(values)
    # the smaller probability keeps its precision, the larger one is its complement
    if probs[0] >= probs[1]:
        p_noise = float(probs[1])
        p_signal = 1.0 - p_noise
    else:
        p_signal = float(probs[0])
        p_noise = 1.0 - p_signal
    return DetectorOutput(p_signal, p_noise, (float(values[0]), float(values[1])))


class EnergyScorer:
    """logit_signal = ln(mean power / floor), logit_noise = 0."""

    name = "energy"

    def __init__(self, floor: float = DEFAULT_FLOOR):
        if not floor > 0:
            raise ValidationError(f"noise floor must be positive, got {floor}")
        self.floor = floor

    def _power(self, y: Signal) -> float:
        return float(np.mean(y.samples**2))

    def __call__(self, y: Signal) -> Tuple[float, float]:
        power = max(self._power(y), np.finfo(np.float64).tiny)
        return math.log(power / self.floor), 0.0


class DilatedEnergyScorer(EnergyScorer):
    """Energy detector applied after the default dilated stack."""

    name = "dilated"

    def __init__(self, floor: float = DEFAULT_FLOOR, stack: Optional[DilatedStack] = None):
        super().__init__(floor)
        self.stack = stack or DilatedStack.default()

    def _power(self, y: Signal) -> float:
        return float(np.mean(self.stack(y).samples ** 2))


BUILTIN_SCORERS: Dict[str, Callable[..., FeatureScorer]] = {
    EnergyScorer.name: EnergyScorer,
    DilatedEnergyScorer.name: DilatedEnergyScorer,
}


def detect(y: Signal, scorer: Optional[FeatureScorer] = None) -> DetectorOutput:
    """Score y and turn the logits into signal/noise probabilities."""
    scorer = scorer or EnergyScorer()
    logits = scorer(y)
    output = softmax2(logits)
    logger.debug(f"detect: logits={output.logits} p_signal={output.p_signal:.4f}")
    return output
