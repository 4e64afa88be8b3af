#!/usr/bin/env python3
"""
Performance benchmarks for weaksig.

Times the enhancement kernels on noisy sine inputs of increasing length so
regressions in the vectorised paths show up before a release.
"""

import statistics
import time
from typing import Callable, Dict, List

from weaksig.core import bsr, cumulant, nlm, pipeline
from weaksig.core.generation import add_noise, generate
from weaksig.models import BsrSystem, ModulationSpec, NlmConfig, NoiseSpec, PipelineConfig, Signal

SAMPLE_RATE = 8000.0

# Mean time above which an operation is reported as slow, in seconds per 1000 samples.
THRESHOLDS = {"nlm": 0.05, "fir": 0.01, "bsr": 0.02, "pipeline": 0.1}


def noisy_sine(n_samples: int, seed: int = 0) -> Signal:
    clean = generate(ModulationSpec(), SAMPLE_RATE, n_samples / SAMPLE_RATE)
    noise = NoiseSpec(gaussian_sigma=1.0, impulse_prob=0.01, impulse_sigma=10.0, rng_seed=seed)
    return add_noise(clean, noise)


class BenchmarkRunner:
    """Run performance benchmarks for the weaksig kernels."""

    def __init__(self, repeats: int = 3):
        self.repeats = repeats
        self.results: Dict[str, List[float]] = {}
        self.sizes: Dict[str, int] = {}

    def time_operation(self, name: str, operation_func: Callable, *args, **kwargs) -> float:
        """Time a single operation and record the result."""
        start_time = time.perf_counter()
        _ = operation_func(*args, **kwargs)
        duration = time.perf_counter() - start_time

        self.results.setdefault(name, []).append(duration)
        return duration

    def _repeat(self, kind: str, n_samples: int, operation_func: Callable, *args) -> float:
        name = f"{kind}_{n_samples}_samples"
        self.sizes[name] = n_samples
        for _ in range(self.repeats):
            self.time_operation(name, operation_func, *args)
        return statistics.mean(self.results[name])

    def benchmark_nlm(self, n_samples: int) -> float:
        """Non-local means with the default window, single worker."""
        return self._repeat("nlm", n_samples, nlm.denoise, noisy_sine(n_samples), NlmConfig())

    def benchmark_fir(self, n_samples: int, max_lag: int = 64) -> float:
        """Cumulant slice estimation, filter design and application."""
        return self._repeat("fir", n_samples, cumulant.enhance, noisy_sine(n_samples), max_lag)

    def benchmark_bsr(self, n_samples: int) -> float:
        """Forward Euler integration of the double-well system; the noise arrives with the input."""
        return self._repeat("bsr", n_samples, bsr.integrate, BsrSystem(), noisy_sine(n_samples))

    def benchmark_pipeline(self, n_samples: int) -> float:
        """The default INP -> NLM -> FIR chain."""
        return self._repeat(
            "pipeline", n_samples, pipeline.enhance, noisy_sine(n_samples), PipelineConfig()
        )

    def run_all_benchmarks(self) -> None:
        """Run all benchmark tests."""
        print("🚀 Running weaksig Performance Benchmarks")
        print("=" * 50)

        sections = [
            ("🧹 Non-Local Means", self.benchmark_nlm, [1000, 4000, 16000]),
            ("🎯 Cumulant FIR", self.benchmark_fir, [1000, 4000, 16000, 64000]),
            ("🌀 Bistable Resonator", self.benchmark_bsr, [1000, 4000, 16000]),
            ("⚡ Full Pipeline", self.benchmark_pipeline, [1000, 4000, 16000]),
        ]
        for title, bench, sizes in sections:
            print(f"\n{title}:")
            for n_samples in sizes:
                duration = bench(n_samples)
                print(f"  {n_samples:6d} samples: {duration*1000:.2f} ms")

    def print_summary(self) -> None:
        """Print benchmark summary statistics."""
        print("\n📊 Benchmark Summary:")
        print("=" * 50)

        for operation, times in self.results.items():
            mean_time = statistics.mean(times) * 1000
            std_dev = statistics.stdev(times) * 1000 if len(times) > 1 else 0.0
            print(f"\n{operation}:")
            print(f"  Mean: {mean_time:.2f} ms ± {std_dev:.2f} ms")
            print(f"  Range: {min(times)*1000:.2f} ms - {max(times)*1000:.2f} ms")

        print("\n💡 Performance Analysis:")
        print("-" * 30)

        slow_operations = []
        for operation, times in self.results.items():
            kind = operation.split("_", 1)[0]
            per_thousand = statistics.mean(times) / (self.sizes[operation] / 1000)
            if per_thousand > THRESHOLDS[kind]:
                slow_operations.append(f"{operation}: {per_thousand*1000:.2f} ms per 1000 samples")

        if slow_operations:
            print("⚠️  Operations that may need optimization:")
            for op in slow_operations:
                print(f"  - {op}")
        else:
            print("✅ All operations performing within acceptable thresholds")


def main() -> int:
    """Run the benchmark suite."""
    runner = BenchmarkRunner()
    try:
        runner.run_all_benchmarks()
        runner.print_summary()
        print(f"\nTotal operations benchmarked: {len(runner.results)}")
    except Exception as e:
        print(f"❌ Benchmark failed: {e}")
        return 1
    return 0


if __name__ == "__main__":
    exit(main())
