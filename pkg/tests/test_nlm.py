"""
Tests for 1D non-local means, checked against a direct triple-loop evaluation.
"""

import math

import numpy as np
import pytest

from weaksig.core import nlm
from weaksig.models import NlmConfig, Signal


def naive_denoise(x, patch, search, h, kernel):
    """Loop-by-loop non-local means over mirror-extended patches."""
    n = len(x)
    ext = np.pad(x, patch, mode="symmetric")
    out = np.empty(n)
    for i in range(n):
        num = 0.0
        den = 0.0
        for j in range(max(0, i - search), min(n, i + search + 1)):
            d = 0.0
            for k in range(-patch, patch + 1):
                diff = ext[i + k + patch] - ext[j + k + patch]
                d += kernel[k + patch] * diff * diff
            w = math.exp(-d / (h * h))
            num += w * x[j]
            den += w
        out[i] = num / den
    return out


def _noisy(n=200, seed=0):
    rng = np.random.default_rng(seed)
    t = np.arange(n)
    return Signal(np.sin(2 * np.pi * t / 8) + rng.normal(0, 0.3, n), 8000)


@pytest.mark.parametrize(
    "patch, search", [(1, 1), (1, 8), (2, 2), (2, 8), (4, 4), (4, 8)]
)
def test_matches_naive_evaluation(patch, search):
    y = _noisy()
    cfg = NlmConfig(patch_half_width=patch, search_half_width=search, h=0.5)
    kernel = np.full(2 * patch + 1, 1.0 / (2 * patch + 1))
    expected = naive_denoise(y.samples, patch, search, 0.5, kernel)
    assert np.max(np.abs(nlm.denoise(y, cfg).samples - expected)) <= 1e-12


def test_gaussian_patch_kernel_matches_naive():
    y = _noisy(seed=1)
    cfg = NlmConfig(patch_half_width=3, search_half_width=6, h=0.4, kernel_sigma=1.5)
    kernel = nlm.patch_kernel(3, 1.5)
    assert kernel.sum() == pytest.approx(1.0)
    assert kernel[3] == kernel.max()
    expected = naive_denoise(y.samples, 3, 6, 0.4, kernel)
    assert np.max(np.abs(nlm.denoise(y, cfg).samples - expected)) <= 1e-12


def test_full_search_covers_whole_signal():
    y = _noisy(50, seed=2)
    cfg = NlmConfig(patch_half_width=2, h=0.6, full_search=True)
    kernel = np.full(5, 0.2)
    expected = naive_denoise(y.samples, 2, 49, 0.6, kernel)
    assert np.max(np.abs(nlm.denoise(y, cfg).samples - expected)) <= 1e-12


def test_chunked_and_threaded_runs_are_identical():
    y = _noisy(1000, seed=3)
    cfg = NlmConfig(patch_half_width=3, search_half_width=20)
    single = nlm.denoise(y, cfg).samples
    assert np.array_equal(nlm.denoise(y, cfg, chunk_size=37).samples, single)
    assert np.array_equal(nlm.denoise(y, cfg, workers=4, chunk_size=100).samples, single)


def test_weights_are_normalised_over_valid_window():
    y = _noisy()
    cfg = NlmConfig(patch_half_width=2, search_half_width=3, h=0.5)
    w = nlm.weights(y, 0, cfg)
    assert sorted(w) == [0, 1, 2, 3]
    assert sum(w.values()) == pytest.approx(1.0)
    assert max(w, key=w.get) == 0


def test_patch_distance_is_symmetric():
    y = _noisy()
    cfg = NlmConfig(patch_half_width=3)
    assert nlm.patch_distance(y, 5, 5, cfg) == 0.0
    assert nlm.patch_distance(y, 5, 40, cfg) == nlm.patch_distance(y, 40, 5, cfg)
    with pytest.raises(IndexError):
        nlm.patch_distance(y, 0, len(y), cfg)


def test_automatic_h_tracks_noise_level():
    rng = np.random.default_rng(4)
    y = Signal(rng.normal(0, 2.0, 20_000), 8000)
    assert nlm.estimate_noise_sigma(y) == pytest.approx(2.0, rel=0.05)
    assert nlm.resolve_h(y, NlmConfig()) == pytest.approx(1.2, rel=0.05)
    assert nlm.resolve_h(y, NlmConfig(h=0.3)) == 0.3


def test_constant_signal_is_preserved():
    y = Signal(np.full(30, 2.5), 8000)
    assert np.allclose(nlm.denoise(y, NlmConfig(patch_half_width=2)).samples, 2.5)


def test_reduces_gaussian_noise(sine):
    clean = sine(2000)
    rng = np.random.default_rng(5)
    noisy = clean.with_samples(clean.samples + rng.normal(0, 0.5, len(clean)))
    out = nlm.denoise(noisy, NlmConfig())
    before = np.mean((noisy.samples - clean.samples) ** 2)
    after = np.mean((out.samples - clean.samples) ** 2)
    assert after < before


def test_random_shapes_match_naive_evaluation():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(1, 65))
        patch = int(rng.choice([1, 2, 4]))
        search = int(rng.integers(patch, 9))
        h = float(rng.uniform(0.2, 2.0))
        y = Signal(rng.normal(0, 1, n), 8000)
        cfg = NlmConfig(patch_half_width=patch, search_half_width=search, h=h)
        kernel = np.full(2 * patch + 1, 1.0 / (2 * patch + 1))
        expected = naive_denoise(y.samples, patch, search, h, kernel)
        got = nlm.denoise(y, cfg).samples
        assert np.max(np.abs(got - expected)) <= 1e-12, (n, patch, search, h)


@pytest.mark.parametrize("seed", range(5))
def test_negating_input_negates_output(seed):
    y = _noisy(120, seed=seed)
    cfg = NlmConfig(patch_half_width=2, search_half_width=10)
    flipped = nlm.denoise(y.with_samples(-y.samples), cfg).samples
    assert np.allclose(flipped, -nlm.denoise(y, cfg).samples, rtol=0, atol=1e-12)


@pytest.mark.parametrize("n", [1, 3, 17, 64])
@pytest.mark.parametrize("patch", [1, 2, 4])
def test_constant_signal_is_a_fixed_point(n, patch):
    y = Signal(np.full(n, -0.75), 8000)
    cfg = NlmConfig(patch_half_width=patch, search_half_width=2 * patch, h=0.5)
    assert np.allclose(nlm.denoise(y, cfg).samples, -0.75, rtol=0, atol=1e-12)
