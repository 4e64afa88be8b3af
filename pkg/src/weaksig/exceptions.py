"""Exception hierarchy for weaksig."""

from typing import List, Optional, Sequence


class WeakSigError(Exception):
    """Base exception for all weaksig errors."""

    def __init__(self, message: str, details: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.details = details

    def __str__(self) -> str:
        if self.details:
            return f"{self.message}\nDetails: {self.details}"
        return self.message


class ConfigError(WeakSigError):
    """Exception raised for configuration errors."""

    pass


class ValidationError(WeakSigError):
    """Exception raised when an operation rejects its input."""

    pass


class SignalFormatError(WeakSigError):
    """Exception raised for corrupt or unreadable signal files."""

    def __init__(self, message: str, path: Optional[str] = None, offset: Optional[int] = None):
        super().__init__(message)
        self.path = path
        self.offset = offset

    def __str__(self) -> str:
        base_msg = self.message
        if self.path:
            base_msg = f"{self.path}: {base_msg}"
        if self.offset is not None:
            base_msg += f" (at byte offset {self.offset})"
        return base_msg


class DegenerateFilterError(ValidationError):
    """Exception raised when a cumulant slice cannot produce a usable filter."""

    pass


class NearGaussianError(ValidationError):
    """Exception raised when the excess kurtosis is indistinguishable from zero."""

    def __init__(self, message: str, kurtosis: float, tolerance: float):
        super().__init__(message)
        self.kurtosis = kurtosis
        self.tolerance = tolerance


class DivergenceError(WeakSigError):
    """Exception raised when the bistable integrator leaves its stability band."""

    def __init__(self, message: str, index: Optional[int] = None, state: Optional[float] = None):
        super().__init__(message)
        self.index = index
        self.state = state

    def __str__(self) -> str:
        base_msg = self.message
        if self.index is not None:
            base_msg += f"\nSample: {self.index}"
        if self.state is not None:
            base_msg += f"\nState: {self.state!r}"
        return base_msg


class StageError(WeakSigError):
    """Exception raised when a pipeline stage fails."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause


class UnknownScenarioError(ValidationError):
    """Exception raised for scenario names missing from the registry."""

    def __init__(self, name: str, known: Sequence[str]):
        self.known: List[str] = sorted(known)
        super().__init__(
            f"Unknown scenario: {name}", details=f"known scenarios: {', '.join(self.known)}"
        )
        self.name = name


__all__ = [
    "WeakSigError",
    "ConfigError",
    "ValidationError",
    "SignalFormatError",
    "DegenerateFilterError",
    "NearGaussianError",
    "DivergenceError",
    "StageError",
    "UnknownScenarioError",
]
