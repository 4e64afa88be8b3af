"""
weaksig - Enhance weak signals buried in impulsive and Gaussian noise.

Impulse-noise preprocessing, non-local means, a fourth-order-cumulant matched
filter and bistable stochastic resonance, with the evaluation scenarios and
command-line tooling around them.
"""

from .cli import app
from .exceptions import (
    ConfigError,
    DegenerateFilterError,
    DivergenceError,
    NearGaussianError,
    SignalFormatError,
    StageError,
    UnknownScenarioError,
    ValidationError,
    WeakSigError,
)
from .models import (
    EvalReport,
    ModulationSpec,
    NoiseSpec,
    PipelineConfig,
    RunManifest,
    Scheme,
    Signal,
)

__version__ = "1.0.0"
__license__ = "MIT"

__all__ = [
    # CLI
    "app",
    # Models
    "Signal",
    "NoiseSpec",
    "ModulationSpec",
    "Scheme",
    "PipelineConfig",
    "EvalReport",
    "RunManifest",
    # Exceptions
    "WeakSigError",
    "ConfigError",
    "ValidationError",
    "SignalFormatError",
    "DegenerateFilterError",
    "NearGaussianError",
    "DivergenceError",
    "StageError",
    "UnknownScenarioError",
    # Version
    "__version__",
]
