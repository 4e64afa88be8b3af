"""Impulse-noise preprocessor: median-derived clipping followed by peak normalization."""

import logging

import numpy as np

from ..exceptions import ValidationError
from ..models import ClipMode, InpConfig, Signal

logger = logging.getLogger(__name__)


def threshold(y: Signal, cfg: InpConfig) -> float:
    """tau_r = (1 + 2*tau0) * median(|y|).

    numpy's median averages the two central order statistics of an
    even-length sequence.
    """
    return float((1 + 2 * cfg.tau0) * np.median(np.abs(y.samples)))


def clip(y: Signal, tau_r: float, mode: ClipMode = ClipMode.INVERSE_SQUARE) -> Signal:
    """Attenuate samples with |y| > tau_r.

    The default inverse-square law maps y to y * (tau_r / |y|)^2, which keeps
    the sign and lands strictly below tau_r. TRUNCATE clamps to +/-tau_r and
    ZERO removes the sample; both exist for comparison runs.
    """
    if not tau_r > 0:
        raise ValidationError(f"clip threshold must be positive, got {tau_r}")
    x = y.samples
    magnitude = np.abs(x)
    over = magnitude > tau_r
    mode = ClipMode(mode)
    if mode is ClipMode.INVERSE_SQUARE:
        safe = np.where(over, magnitude, 1.0)
        # min() keeps rounding from pushing a clipped sample back above tau_r
        attenuated = np.minimum(tau_r * (tau_r / safe), tau_r)
        clipped = np.where(over, np.sign(x) * attenuated, x)
    elif mode is ClipMode.TRUNCATE:
        clipped = np.where(over, np.sign(x) * tau_r, x)
    else:
        clipped = np.where(over, 0.0, x)
    if over.any():
        logger.debug(f"clipped {int(over.sum())} of {len(y)} samples above {tau_r:.4g}")
    return y.with_samples(clipped)


def normalize(y: Signal) -> Signal:
    """Divide by the peak modulus so max|out| == 1."""
    peak = float(np.max(np.abs(y.samples)))
    if peak == 0:
        raise ValidationError("cannot normalize an all-zero signal")
    return y.with_samples(y.samples / peak)


def inp(y: Signal, cfg: InpConfig) -> Signal:
    """normalize(clip(y, threshold(y, cfg)))."""
    tau_r = threshold(y, cfg)
    if tau_r == 0:
        raise ValidationError(
            "INP threshold is zero", details="at least half of the samples are exactly zero"
        )
    return normalize(clip(y, tau_r, cfg.mode))
