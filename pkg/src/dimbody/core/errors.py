"""Dimbody error types for library and CLI operations."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Any


class ExitCode(IntEnum):
    """CLI exit codes."""

    SUCCESS = 0
    OPERATIONAL_FAILURE = 1
    USAGE_OR_VALIDATION = 2
    NUMERICAL_INTEGRITY = 3
    IO_FAILURE = 4
    INTERRUPTED = 130


@dataclass
class DimbodyError(Exception):
    """Base Dimbody error with structured data."""

    message: str
    exit_code: ExitCode = ExitCode.OPERATIONAL_FAILURE
    data: dict[str, Any] | None = None

    def __str__(self) -> str:
        return self.message


class InvalidInputError(DimbodyError):
    """Raised when an argument violates an operation's preconditions."""

    def __init__(self, message: str, **data: Any) -> None:
        super().__init__(
            message=message,
            exit_code=ExitCode.USAGE_OR_VALIDATION,
            data=data or None,
        )


class InvalidCombinationError(DimbodyError):
    """Raised when convex weights are negative or do not sum to one."""

    def __init__(self, weight_sum: float, details: str | None = None) -> None:
        message = f"Convex weights must sum to 1 (got {weight_sum!r})"
        if details:
            message = details
        super().__init__(
            message=message,
            exit_code=ExitCode.USAGE_OR_VALIDATION,
            data={"weight_sum": weight_sum},
        )


class InvalidConfigurationError(DimbodyError):
    """Raised when a vector configuration holds non-unit vectors."""

    def __init__(self, max_deviation: float, tolerance: float) -> None:
        super().__init__(
            message=(
                f"Vector norms deviate from 1 by {max_deviation:.3e} "
                f"(tolerance {tolerance:.1e})"
            ),
            exit_code=ExitCode.USAGE_OR_VALIDATION,
            data={"max_deviation": max_deviation, "tolerance": tolerance},
        )


class InfeasiblePointError(DimbodyError):
    """Raised when a Gram matrix violates the primal constraints."""

    def __init__(self, constraint: str, violation: float) -> None:
        super().__init__(
            message=f"Primal point infeasible: {constraint} violated by {violation:.3e}",
            exit_code=ExitCode.USAGE_OR_VALIDATION,
            data={"constraint": constraint, "violation": violation},
        )


class InvalidMeasurementError(DimbodyError):
    """Raised when a two-outcome observable leaves the [-1, 1] spectrum range."""

    def __init__(self, alpha: float, bloch_norm: float) -> None:
        super().__init__(
            message=(
                f"|alpha| + |bloch| must not exceed 1 "
                f"(alpha={alpha!r}, |bloch|={bloch_norm!r})"
            ),
            exit_code=ExitCode.USAGE_OR_VALIDATION,
            data={"alpha": alpha, "bloch_norm": bloch_norm},
        )


class ResourceLimitError(DimbodyError):
    """Raised when a request exceeds the supported problem size."""

    def __init__(self, quantity: str, value: int, limit: int) -> None:
        super().__init__(
            message=f"{quantity}={value} exceeds the supported maximum of {limit}",
            exit_code=ExitCode.USAGE_OR_VALIDATION,
            data={"quantity": quantity, "value": value, "limit": limit},
        )


class NotPsdError(DimbodyError):
    """Raised when a matrix expected to be PSD has a negative eigenvalue."""

    def __init__(self, min_eigenvalue: float, tolerance: float) -> None:
        super().__init__(
            message=(
                f"Matrix is not positive semidefinite: minimum eigenvalue "
                f"{min_eigenvalue:.3e} < -{tolerance:.1e}"
            ),
            exit_code=ExitCode.NUMERICAL_INTEGRITY,
            data={"min_eigenvalue": min_eigenvalue, "tolerance": tolerance},
        )


class NumericalIntegrityError(DimbodyError):
    """Raised when a computed quantity fails a consistency check."""

    def __init__(self, check: str, details: str) -> None:
        super().__init__(
            message=f"Numerical integrity check '{check}' failed: {details}",
            exit_code=ExitCode.NUMERICAL_INTEGRITY,
            data={"check": check, "details": details},
        )


class OutputWriteError(DimbodyError):
    """Raised when an output file cannot be written."""

    def __init__(self, path: str, reason: str) -> None:
        super().__init__(
            message=f"Cannot write {path}: {reason}",
            exit_code=ExitCode.IO_FAILURE,
            data={"path": path, "reason": reason},
        )
