"""Numerical kernels and composition for weaksig."""

from .batch_processor import BatchProcessor, BatchResult
from .experiments import SCENARIOS, linear_fit_r2, run_experiment
from .pipeline import coherent_average, enhance, group_delay

__all__ = [
    "BatchProcessor",
    "BatchResult",
    "SCENARIOS",
    "run_experiment",
    "linear_fit_r2",
    "enhance",
    "group_delay",
    "coherent_average",
]
