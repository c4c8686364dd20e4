"""Shared core utilities for Dimbody library and CLI operations."""

from dimbody.core.errors import (
    DimbodyError,
    ExitCode,
    InfeasiblePointError,
    InvalidCombinationError,
    InvalidConfigurationError,
    InvalidInputError,
    InvalidMeasurementError,
    NotPsdError,
    NumericalIntegrityError,
    OutputWriteError,
    ResourceLimitError,
)
from dimbody.core.tolerances import ToleranceConfig

__all__ = [
    "DimbodyError",
    "ExitCode",
    "InfeasiblePointError",
    "InvalidCombinationError",
    "InvalidConfigurationError",
    "InvalidInputError",
    "InvalidMeasurementError",
    "NotPsdError",
    "NumericalIntegrityError",
    "OutputWriteError",
    "ResourceLimitError",
    "ToleranceConfig",
]
