"""File services for weaksig."""

from .report_store import DatasetStore, ManifestStore, ReportStore
from .signal_io import read_signal, read_taps, write_magnitudes, write_signal, write_taps

__all__ = [
    "ReportStore",
    "ManifestStore",
    "DatasetStore",
    "read_signal",
    "write_signal",
    "read_taps",
    "write_taps",
    "write_magnitudes",
]
