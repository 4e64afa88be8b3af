"""Data models for weaksig."""

from .config import BsrSystem, ClipMode, InpConfig, NlmConfig, PipelineConfig, Settings
from .filters import (
    CumulantFilter,
    CumulantSlice,
    DetectorOutput,
    DilatedConvLayer,
    EstimatorContext,
    StftFrameSet,
)
from .report import REPORT_COLUMNS, EvalReport, LabeledPair, RunManifest
from .signal import DEFAULT_SAMPLE_RATE, ModulationSpec, NoiseSpec, Scheme, Signal

__all__ = [
    "Signal",
    "NoiseSpec",
    "ModulationSpec",
    "Scheme",
    "DEFAULT_SAMPLE_RATE",
    "InpConfig",
    "ClipMode",
    "NlmConfig",
    "BsrSystem",
    "PipelineConfig",
    "Settings",
    "CumulantSlice",
    "CumulantFilter",
    "DilatedConvLayer",
    "DetectorOutput",
    "StftFrameSet",
    "EstimatorContext",
    "EvalReport",
    "LabeledPair",
    "RunManifest",
    "REPORT_COLUMNS",
]
