"""Fourth-order cumulant slice estimation and the matched FIR filter built from it."""

import logging
import math
from typing import Optional

import numpy as np
from scipy.stats import kurtosis

from ..exceptions import DegenerateFilterError, NearGaussianError, ValidationError
from ..models import CumulantFilter, CumulantSlice, Signal

logger = logging.getLogger(__name__)

KURTOSIS_FLOOR = 1e-9


def estimate_slice(x: Signal, max_lag: int) -> CumulantSlice:
    """c4(m) = E[x^3(n) x(n+m)] - 3 E[x(n) x(n+m)] E[x^2(n)], m = 0..L.

    x is demeaned first; each lag averages over its N - m overlapping pairs.
    """
    n = len(x)
    if max_lag < 0:
        raise ValidationError(f"max_lag must be >= 0, got {max_lag}")
    if n <= 4 * max_lag:
        raise ValidationError(
            "signal too short for cumulant estimation",
            details=f"need more than {4 * max_lag} samples, got {n}",
        )
    centred = x.samples - x.samples.mean()
    cubed = centred**3
    squared = centred**2
    values = np.empty(max_lag + 1, dtype=np.float64)
    for m in range(max_lag + 1):
        count = n - m
        lead = centred[:count]
        lagged = centred[m:]
        fourth = np.dot(cubed[:count], lagged) / count
        second = np.dot(lead, lagged) / count
        power = squared[:count].sum() / count
        values[m] = fourth - 3 * second * power
    return CumulantSlice(values)


def build_filter(slice_: CumulantSlice, gain: float = 1.0) -> CumulantFilter:
    """Mirror the slice into 2L+1 taps: h(m) = c4(|L - m|)."""
    if not np.any(slice_.values):
        raise DegenerateFilterError("cumulant slice is identically zero")
    taps = np.concatenate((slice_.values[::-1], slice_.values[1:]))
    return CumulantFilter(taps, gain)


def kurtosis_tolerance(n: int) -> float:
    """Band of |kappa| indistinguishable from Gaussian: three standard errors, at least 1e-9."""
    return max(KURTOSIS_FLOOR, 3 * math.sqrt(24.0 / n))


def gamma(x: Signal, tolerance: Optional[float] = None) -> float:
    """Reciprocal of |excess kurtosis|.

    Only a kurtosis within `tolerance` of zero (default 1e-9) is rejected;
    design() applies the wider statistical band before choosing its gain.
    """
    if np.ptp(x.samples) == 0:
        raise ValidationError("kurtosis of a constant signal is undefined")
    kappa = float(kurtosis(x.samples, fisher=True, bias=True))
    limit = KURTOSIS_FLOOR if tolerance is None else tolerance
    if abs(kappa) < limit:
        raise NearGaussianError(
            f"excess kurtosis {kappa:.3g} is within +/-{limit:.3g} of Gaussian",
            kurtosis=kappa,
            tolerance=limit,
        )
    return 1.0 / abs(kappa)


def apply(filt: CumulantFilter, x: Signal) -> Signal:
    """y(n) = gamma * sum_m h(m) x(n - m), causal with x(k) = 0 for k < 0."""
    n = len(x)
    samples = x.samples
    out = np.zeros(n, dtype=np.float64)
    for m, tap in enumerate(filt.taps[:n]):
        out[m:] += tap * samples[: n - m]
    return x.with_samples(filt.gain * out)


def design(x: Signal, max_lag: int) -> CumulantFilter:
    """Matched FIR built from the cumulant slice of x itself."""
    slice_ = estimate_slice(x, max_lag)
    try:
        gain = gamma(x, tolerance=kurtosis_tolerance(len(x)))
    except NearGaussianError as e:
        logger.warning(f"{e}; falling back to gain 1")
        gain = 1.0
    return build_filter(slice_, gain)


def enhance(x: Signal, max_lag: int) -> Signal:
    """Filter x with the matched FIR designed from its own statistics."""
    return apply(design(x, max_lag), x)
