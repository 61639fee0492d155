"""
Production plumbing for noisy-sumsets.
Worker pools, oracle caching and error handling shared by the search and verify layers.
"""

from .batch import (
    BatchProcessor,
    BatchProgress,
    BatchResult,
    ProgressTracker,
    create_batch_processor,
)
from .cache import OracleCache, configure_global_cache, get_global_cache, oracle_key
from .error_handling import (
    BudgetExceededError,
    ConstructionError,
    ErrorHandler,
    ErrorRecord,
    ErrorSeverity,
    InvalidParametersError,
    ModulusMismatchError,
    NoisySumsetError,
    NotAUnitError,
    SandwichViolationError,
    SearchCeilingError,
    configure_global_error_handler,
    configure_logging,
    exit_code_for,
    get_global_error_handler,
)

__all__ = [
    # Cache
    "OracleCache",
    "get_global_cache",
    "configure_global_cache",
    "oracle_key",
    # Batch processing
    "BatchProcessor",
    "BatchResult",
    "BatchProgress",
    "ProgressTracker",
    "create_batch_processor",
    # Error handling
    "NoisySumsetError",
    "InvalidParametersError",
    "ModulusMismatchError",
    "NotAUnitError",
    "SearchCeilingError",
    "BudgetExceededError",
    "ConstructionError",
    "SandwichViolationError",
    "ErrorHandler",
    "ErrorRecord",
    "ErrorSeverity",
    "exit_code_for",
    "configure_logging",
    "get_global_error_handler",
    "configure_global_error_handler",
]
