"""
Error handling for noisy-sumsets.
Exception hierarchy, error records and logging setup shared by every module.
"""

import json
import logging
import time
import traceback
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class NoisySumsetError(Exception):
    """Base class for every error raised by the package."""


class InvalidParametersError(NoisySumsetError, ValueError):
    """Parameters outside the domain of an operation."""


class ModulusMismatchError(InvalidParametersError):
    """Operands live in different cyclic groups."""


class NotAUnitError(InvalidParametersError):
    """A multiplier shares a factor with the modulus."""


class SearchCeilingError(NoisySumsetError):
    """Exhaustive search requested above the configured modulus ceiling."""


class BudgetExceededError(NoisySumsetError):
    """A sweep grid reaches outside its configured ceiling."""


class ConstructionError(NoisySumsetError):
    """A witness constructor failed to realize its target size."""


class SandwichViolationError(NoisySumsetError):
    """An exhaustive oracle value fell outside its closed-form bounds."""


def exit_code_for(error: BaseException) -> int:
    """Map an exception onto the command-line exit-code contract."""
    if isinstance(error, (SearchCeilingError, BudgetExceededError)):
        return EXIT_BUDGET
    if isinstance(error, SandwichViolationError):
        return EXIT_FINDING
    if isinstance(error, InvalidParametersError):
        return EXIT_USAGE
    return EXIT_FINDING


class ErrorSeverity(Enum):
    """Error severity levels."""

    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    CRITICAL = "critical"


@dataclass
class ErrorRecord:
    """Record of an error or anomaly noticed during a run."""

    error_type: str
    error_message: str
    stack_trace: str
    timestamp: float
    context: Dict[str, Any] = field(default_factory=dict)
    severity: ErrorSeverity = ErrorSeverity.MEDIUM


class ErrorHandler:
    """Collects error records, logs them and optionally persists them as JSON lines."""

    def __init__(
        self,
        logger: Optional[logging.Logger] = None,
        error_storage_path: Optional[str] = None,
    ):
        self.logger = logger or self._create_default_logger()
        self.error_storage_path = error_storage_path
        self.error_history: List[ErrorRecord] = []
        self.error_counts: Dict[str, int] = {}

    def handle_error(
        self,
        error: Exception,
        context: Dict[str, Any],
        severity: ErrorSeverity = ErrorSeverity.MEDIUM,
    ) -> ErrorRecord:
        """Handle and record an error."""
        stack = ""
        if error.__traceback__ is not None:
            stack = "".join(traceback.format_exception(type(error), error, error.__traceback__))

        error_record = ErrorRecord(
            error_type=type(error).__name__,
            error_message=str(error),
            stack_trace=stack,
            timestamp=time.time(),
            context=context,
            severity=severity,
        )

        self.error_history.append(error_record)
        self.error_counts[error_record.error_type] = (
            self.error_counts.get(error_record.error_type, 0) + 1
        )

        self._log_error(error_record)

        if self.error_storage_path:
            self._store_error(error_record)

        return error_record

    def record_anomaly(
        self,
        kind: str,
        message: str,
        context: Dict[str, Any],
        severity: ErrorSeverity = ErrorSeverity.LOW,
    ) -> ErrorRecord:
        """Record a reportable finding that is not an exception (truncated row, orbit mismatch)."""
        record = ErrorRecord(
            error_type=kind,
            error_message=message,
            stack_trace="",
            timestamp=time.time(),
            context=context,
            severity=severity,
        )
        self.error_history.append(record)
        self.error_counts[kind] = self.error_counts.get(kind, 0) + 1
        self._log_error(record)
        if self.error_storage_path:
            self._store_error(record)
        return record

    def get_error_summary(self) -> Dict[str, Any]:
        """Get summary of error statistics."""
        total_errors = len(self.error_history)

        if total_errors == 0:
            return {"total_errors": 0}

        severity_counts: Dict[str, int] = {}
        for error in self.error_history:
            severity_counts[error.severity.value] = (
                severity_counts.get(error.severity.value, 0) + 1
            )

        return {
            "total_errors": total_errors,
            "error_types": dict(self.error_counts),
            "severity_distribution": severity_counts,
        }

    def clear_error_history(self) -> None:
        """Clear error history."""
        self.error_history.clear()
        self.error_counts.clear()

    def _log_error(self, error_record: ErrorRecord) -> None:
        """Log error with appropriate level."""

        log_level = {
            ErrorSeverity.LOW: logging.INFO,
            ErrorSeverity.MEDIUM: logging.WARNING,
            ErrorSeverity.HIGH: logging.ERROR,
            ErrorSeverity.CRITICAL: logging.CRITICAL,
        }.get(error_record.severity, logging.WARNING)

        self.logger.log(
            log_level,
            f"{error_record.error_type}: {error_record.error_message} "
            f"(Context: {error_record.context})",
        )

    def _store_error(self, error_record: ErrorRecord) -> None:
        """Append the record to the JSON-lines error log."""
        try:
            error_data = {
                "error_type": error_record.error_type,
                "error_message": error_record.error_message,
                "timestamp": error_record.timestamp,
                "context": error_record.context,
                "severity": error_record.severity.value,
            }

            with open(self.error_storage_path, "a") as f:
                f.write(json.dumps(error_data, sort_keys=True, default=str) + "\n")

        except OSError as e:
            self.logger.error(f"Failed to store error record: {e}")

    def _create_default_logger(self) -> logging.Logger:
        """Create default logger."""
        return logging.getLogger("noisy_sumsets.error_handler")


def configure_logging(level: int = logging.WARNING) -> logging.Logger:
    """Install the package log handler once and set the package log level."""
    logger = logging.getLogger("noisy_sumsets")
    logger.setLevel(level)

    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)

    return logger


# Global error handler instance
_global_error_handler: Optional[ErrorHandler] = None


def get_global_error_handler() -> ErrorHandler:
    """Get the global error handler instance."""
    global _global_error_handler
    if _global_error_handler is None:
        _global_error_handler = ErrorHandler()
    return _global_error_handler


def configure_global_error_handler(
    logger: Optional[logging.Logger] = None, error_storage_path: Optional[str] = None
) -> None:
    """Configure the global error handler."""
    global _global_error_handler
    _global_error_handler = ErrorHandler(
        logger=logger, error_storage_path=error_storage_path
    )
