# cosetanomaly/errors.py
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict

logger = logging.getLogger(__name__)


class ErrorCategory(Enum):
    """Categories of failures raised by the engine"""

    DIMENSION = "dimension"
    INVALID_INPUT = "invalid_input"
    INVALID_CONFIGURATION = "invalid_configuration"
    INADMISSIBLE_LEVEL = "inadmissible_level"
    PARSE = "parse"
    DATA = "data"


class ErrorSeverity(Enum):
    """How a failure should be surfaced to the caller"""

    USAGE = "usage"
    DATA = "data"
    INTERNAL = "internal"


# CLI exit status per category
EXIT_CODES: Dict[ErrorCategory, int] = {
    ErrorCategory.DIMENSION: 2,
    ErrorCategory.INVALID_INPUT: 2,
    ErrorCategory.INVALID_CONFIGURATION: 2,
    ErrorCategory.PARSE: 2,
    ErrorCategory.INADMISSIBLE_LEVEL: 3,
    ErrorCategory.DATA: 1,
}


class CosetAnomalyError(ValueError):
    """Base class for all errors raised by the package"""

    category: ErrorCategory = ErrorCategory.INVALID_INPUT
    severity: ErrorSeverity = ErrorSeverity.USAGE

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        return {
            "category": self.category.value,
            "severity": self.severity.value,
            "message": self.message,
            "details": {key: str(value) for key, value in self.details.items()},
        }


class DimensionMismatchError(CosetAnomalyError):
    category = ErrorCategory.DIMENSION


class EmptyInputError(CosetAnomalyError):
    category = ErrorCategory.INVALID_INPUT


class RankOutOfRangeError(CosetAnomalyError):
    category = ErrorCategory.INVALID_INPUT


class InvalidConfigurationError(CosetAnomalyError):
    category = ErrorCategory.INVALID_CONFIGURATION


class InadmissibleLevelError(CosetAnomalyError):
    category = ErrorCategory.INADMISSIBLE_LEVEL


class SubalgebraParseError(CosetAnomalyError):
    category = ErrorCategory.PARSE


class InsufficientEmbeddingDataError(CosetAnomalyError):
    category = ErrorCategory.INVALID_INPUT


class UnsupportedAlgebraError(CosetAnomalyError):
    category = ErrorCategory.INVALID_INPUT


class CuratedDataError(CosetAnomalyError):
    """Raised when a curated table cannot be loaded or contradicts itself"""

    category = ErrorCategory.DATA
    severity = ErrorSeverity.DATA


@dataclass
class ErrorReport:
    """Serializable description of a failure, used by the CLI"""

    category: ErrorCategory
    message: str
    exit_code: int
    details: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_exception(cls, exc: Exception) -> "ErrorReport":
        if isinstance(exc, CosetAnomalyError):
            return cls(
                category=exc.category,
                message=exc.message,
                exit_code=EXIT_CODES[exc.category],
                details=dict(exc.details),
            )
        logger.error(f"Unexpected error type {type(exc).__name__}: {exc}")
        return cls(
            category=ErrorCategory.INVALID_INPUT,
            message=str(exc),
            exit_code=EXIT_CODES[ErrorCategory.INVALID_INPUT],
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "category": self.category.value,
            "message": self.message,
            "exit_code": self.exit_code,
            "details": {key: str(value) for key, value in self.details.items()},
        }

