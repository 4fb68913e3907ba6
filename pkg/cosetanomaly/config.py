# cosetanomaly/config.py
import logging
import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

DEFAULT_DATA_DIR = str(Path(__file__).parent / "data")
VALID_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class OutputFormat(Enum):
    """Supported CLI output formats"""

    TABLE = "table"
    JSON = "json"


@dataclass
class EngineConfig:
    """Runtime settings for the engine and the CLI"""

    # Curated tables
    data_dir: str = DEFAULT_DATA_DIR

    # Logging
    log_level: str = "WARNING"

    # Catalog
    max_rank: int = 8

    # Reproduction
    reproduce_workers: int = 1

    # Output
    output_format: OutputFormat = OutputFormat.TABLE

    extra: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_env(cls) -> "EngineConfig":
        """Create EngineConfig from environment variables (and a .env file if present)"""
        load_dotenv()

        output_name = os.getenv("COSET_ANOMALY_OUTPUT", "table").lower()
        try:
            output_format = OutputFormat(output_name)
        except ValueError:
            logger.warning(f"Unknown output format '{output_name}', using table")
            output_format = OutputFormat.TABLE

        return cls(
            data_dir=os.getenv("COSET_ANOMALY_DATA_DIR", DEFAULT_DATA_DIR),
            log_level=os.getenv("COSET_ANOMALY_LOG_LEVEL", "WARNING").upper(),
            max_rank=int(os.getenv("COSET_ANOMALY_MAX_RANK", "8")),
            reproduce_workers=int(os.getenv("COSET_ANOMALY_WORKERS", "1")),
            output_format=output_format,
        )

    def validate(self) -> bool:
        """Validate all settings, raising ValueError on the first problem"""
        self._validate_data_dir()
        self._validate_log_level()
        self._validate_limits()
        return True

    def _validate_data_dir(self) -> None:
        if not self.data_dir:
            raise ValueError("Data directory is required")
        if not Path(self.data_dir).is_dir():
            raise ValueError(f"Data directory does not exist: {self.data_dir}")

    def _validate_log_level(self) -> None:
        if self.log_level not in VALID_LOG_LEVELS:
            raise ValueError(f"Invalid log level: {self.log_level}")

    def _validate_limits(self) -> None:
        if self.max_rank < 1:
            raise ValueError("Max rank must be positive")
        if self.reproduce_workers < 1:
            raise ValueError("Reproduce workers must be at least 1")
        if self.reproduce_workers > 64:
            raise ValueError("Reproduce workers is too high (max: 64)")

    def get_validation_summary(self) -> Dict[str, Any]:
        """Collect validation errors instead of raising"""
        errors: List[str] = []
        for check in (
            self._validate_data_dir,
            self._validate_log_level,
            self._validate_limits,
        ):
            try:
                check()
            except ValueError as e:
                errors.append(str(e))

        return {
            "valid": not errors,
            "errors": errors,
            "data_dir": self.data_dir,
            "log_level": self.log_level,
            "max_rank": self.max_rank,
            "reproduce_workers": self.reproduce_workers,
            "output_format": self.output_format.value,
        }

    def logging_level(self) -> int:
        return getattr(logging, self.log_level, logging.WARNING)
