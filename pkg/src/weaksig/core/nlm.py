"""Non-local means denoising for 1D sample sequences.

out(i) = sum_j w(i, j) * y(j) with
w(i, j) = exp(-d(i, j) / h^2) / Z(i) and
d(i, j) = sum_k a(k) * (y(i + k) - y(j + k))^2, k = -P..P.

The signal is mirror-extended by P samples so every patch exists; candidates
j are the valid indices within +/-S of i. Each output sample is computed with
the same sequence of element-wise operations whatever chunk it falls in, so
chunked or threaded evaluation is bit-identical to a single pass.
"""

import concurrent.futures
import logging
import math
from typing import Dict, List, Tuple

import numpy as np
from scipy.stats import median_abs_deviation

from ..models import NlmConfig, Signal

logger = logging.getLogger(__name__)

# MAD of a standard normal
_MAD_TO_SIGMA = 0.6745
# cap on candidate-matrix elements per chunk
_MAX_CHUNK_ELEMENTS = 2_000_000


def patch_kernel(patch_half_width: int, kernel_sigma: float) -> np.ndarray:
    """Normalized patch weights a(k), k = -P..P (uniform when kernel_sigma == 0)."""
    offsets = np.arange(-patch_half_width, patch_half_width + 1, dtype=np.float64)
    if kernel_sigma == 0:
        return np.full(offsets.size, 1.0 / offsets.size)
    kernel = np.exp(-(offsets**2) / (2 * kernel_sigma**2))
    return kernel / kernel.sum()


def estimate_noise_sigma(y: Signal) -> float:
    """Robust noise level: MAD of first differences / (sqrt(2) * 0.6745)."""
    if len(y) < 2:
        return 0.0
    return float(median_abs_deviation(np.diff(y.samples)) / (math.sqrt(2) * _MAD_TO_SIGMA))


def resolve_h(y: Signal, cfg: NlmConfig) -> float:
    """Smoothing parameter: cfg.h, or 0.6 times the robust noise estimate."""
    if cfg.h is not None:
        return cfg.h
    h = 0.6 * estimate_noise_sigma(y)
    if h > 0:
        return h
    spread = float(np.std(y.samples))
    fallback = 0.6 * spread if spread > 0 else 1.0
    logger.warning(f"noise estimate is zero; using h = {fallback:.4g}")
    return fallback


def _extend(y: Signal, patch_half_width: int) -> np.ndarray:
    return np.pad(y.samples, patch_half_width, mode="symmetric")


def _distance_rows(
    ext: np.ndarray, kernel: np.ndarray, centers: np.ndarray, candidates: np.ndarray
) -> np.ndarray:
    """d(i, j) for i = centers (columns) and j = candidates (rows x columns)."""
    d = np.zeros(candidates.shape, dtype=np.float64)
    for k in range(kernel.size):
        diff = ext[centers + k][np.newaxis, :] - ext[candidates + k]
        d += kernel[k] * diff**2
    return d


def patch_distance(y: Signal, i: int, j: int, cfg: NlmConfig) -> float:
    """Kernel-weighted squared distance between the patches centred at i and j."""
    n = len(y)
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"patch centres must lie in [0, {n}), got {i}, {j}")
    ext = _extend(y, cfg.patch_half_width)
    kernel = patch_kernel(cfg.patch_half_width, cfg.kernel_sigma)
    d = _distance_rows(ext, kernel, np.array([i]), np.array([[j]]))
    return float(d[0, 0])


def _candidates(
    lo: int, hi: int, radius: int, n: int
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    centers = np.arange(lo, hi)
    offsets = np.arange(-radius, radius + 1)
    raw = centers[np.newaxis, :] + offsets[:, np.newaxis]
    valid = (raw >= 0) & (raw < n)
    return centers, np.clip(raw, 0, n - 1), valid


def _raw_weights(
    ext: np.ndarray,
    kernel: np.ndarray,
    h2: float,
    centers: np.ndarray,
    candidates: np.ndarray,
    valid: np.ndarray,
) -> np.ndarray:
    d = _distance_rows(ext, kernel, centers, candidates)
    return np.where(valid, np.exp(-d / h2), 0.0)


def weights(y: Signal, i: int, cfg: NlmConfig) -> Dict[int, float]:
    """Normalized weights w(i, j) over the search window of i."""
    n = len(y)
    if not 0 <= i < n:
        raise IndexError(f"index must lie in [0, {n}), got {i}")
    h = resolve_h(y, cfg)
    ext = _extend(y, cfg.patch_half_width)
    kernel = patch_kernel(cfg.patch_half_width, cfg.kernel_sigma)
    centers, candidates, valid = _candidates(i, i + 1, cfg.search_radius(n), n)
    raw = _raw_weights(ext, kernel, h * h, centers, candidates, valid)[:, 0]
    total = raw.sum()
    return {
        int(j): float(w / total)
        for j, w, ok in zip(candidates[:, 0], raw, valid[:, 0])
        if ok
    }


def _denoise_chunk(
    x: np.ndarray, ext: np.ndarray, kernel: np.ndarray, h2: float, radius: int, lo: int, hi: int
) -> np.ndarray:
    centers, candidates, valid = _candidates(lo, hi, radius, x.size)
    raw = _raw_weights(ext, kernel, h2, centers, candidates, valid)
    total = np.zeros(hi - lo, dtype=np.float64)
    acc = np.zeros(hi - lo, dtype=np.float64)
    for row in range(raw.shape[0]):
        total += raw[row]
        acc += raw[row] * x[candidates[row]]
    return acc / total


def denoise(y: Signal, cfg: NlmConfig, workers: int = 1, chunk_size: int = 4096) -> Signal:
    """Replace every sample by the patch-similarity weighted mean of its search window."""
    n = len(y)
    radius = cfg.search_radius(n)
    h = resolve_h(y, cfg)
    h2 = h * h
    ext = _extend(y, cfg.patch_half_width)
    kernel = patch_kernel(cfg.patch_half_width, cfg.kernel_sigma)
    x = y.samples

    step = max(1, min(chunk_size, _MAX_CHUNK_ELEMENTS // (2 * radius + 1)))
    bounds: List[Tuple[int, int]] = [(lo, min(lo + step, n)) for lo in range(0, n, step)]
    logger.debug(
        f"nlm: n={n} P={cfg.patch_half_width} S={radius} h={h:.4g} chunks={len(bounds)}"
    )

    out = np.empty(n, dtype=np.float64)
    if workers > 1 and len(bounds) > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
            futures = {
                executor.submit(_denoise_chunk, x, ext, kernel, h2, radius, lo, hi): (lo, hi)
                for lo, hi in bounds
            }
            for future in concurrent.futures.as_completed(futures):
                lo, hi = futures[future]
                out[lo:hi] = future.result()
    else:
        for lo, hi in bounds:
            out[lo:hi] = _denoise_chunk(x, ext, kernel, h2, radius, lo, hi)
    return y.with_samples(out)
