"""
Centralized Logging Service.

Provides console and per-run file logging with rotation support.
"""

from __future__ import annotations

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any

from src.services.base import BaseService

LOGGER_NAME = "grasp_repertoire"


class LoggerService(BaseService):
    """
    Centralized logging service.

    Features:
    - Console logging on standard error (standard output carries
      the machine-readable summary lines of the CLI)
    - Optional rotating log file per run or batch directory
      (5 files, 5MB each)
    - Configurable log levels

    Usage:
        logger = LoggerService()
        logger.attach_file(out_dir / "run.log")
        logger.info("generation %d done", 12)
    """

    def _on_init(self) -> None:
        """Initialize the logger."""
        self._file_handler: RotatingFileHandler | None = None
        self._log_file: Path | None = None
        self._logger = self._setup_logger()

    def _setup_logger(self) -> logging.Logger:
        """Configure and return the logger."""
        logger = logging.getLogger(LOGGER_NAME)
        logger.setLevel(logging.DEBUG)
        logger.propagate = False

        # Remove existing handlers
        logger.handlers.clear()

        self._console_handler = logging.StreamHandler(sys.stderr)
        self._console_handler.setLevel(logging.INFO)
        self._console_handler.setFormatter(logging.Formatter(
            "%(asctime)s | %(levelname)-8s | %(message)s",
            datefmt="%H:%M:%S"
        ))
        logger.addHandler(self._console_handler)

        return logger

    def configure(
        self,
        level: int | str = "INFO",
        console_enabled: bool = True,
    ) -> None:
        """
        Apply the ``logging`` configuration section.

        Args:
            level: Console level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
            console_enabled: Whether to keep the console handler
        """
        self.set_level(level)
        if console_enabled and self._console_handler not in self._logger.handlers:
            self._logger.addHandler(self._console_handler)
        elif not console_enabled and self._console_handler in self._logger.handlers:
            self._logger.removeHandler(self._console_handler)

    def attach_file(self, log_file: Path) -> None:
        """
        Send DEBUG and above to a rotating file.

        Replaces any previously attached file.

        Args:
            log_file: Target log file; parent directories are created
        """
        self.detach_file()
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handler = RotatingFileHandler(
            log_file,
            maxBytes=5 * 1024 * 1024,  # 5MB
            backupCount=5,
            encoding="utf-8"
        )
        handler.setLevel(logging.DEBUG)
        handler.setFormatter(logging.Formatter(
            "%(asctime)s | %(levelname)-8s | %(threadName)s | %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S"
        ))
        self._logger.addHandler(handler)
        self._file_handler = handler
        self._log_file = log_file

    def detach_file(self) -> None:
        """Close and remove the file handler, if any."""
        if self._file_handler is not None:
            self._logger.removeHandler(self._file_handler)
            self._file_handler.close()
            self._file_handler = None
            self._log_file = None

    def dispose(self) -> None:
        self.detach_file()

    def debug(self, message: str, *args: Any, **kwargs: Any) -> None:
        """Log a debug message."""
        self._logger.debug(message, *args, **kwargs)

    def info(self, message: str, *args: Any, **kwargs: Any) -> None:
        """Log an info message."""
        self._logger.info(message, *args, **kwargs)

    def warning(self, message: str, *args: Any, **kwargs: Any) -> None:
        """Log a warning message."""
        self._logger.warning(message, *args, **kwargs)

    def error(self, message: str, *args: Any, exc_info: bool = False, **kwargs: Any) -> None:
        """Log an error message."""
        self._logger.error(message, *args, exc_info=exc_info, **kwargs)

    def exception(self, message: str, *args: Any, **kwargs: Any) -> None:
        """Log an exception with traceback."""
        self._logger.exception(message, *args, **kwargs)

    def set_level(self, level: int | str) -> None:
        """
        Set the console logging level.

        Args:
            level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        """
        if isinstance(level, str):
            level = getattr(logging, level.upper(), logging.INFO)
        self._console_handler.setLevel(level)

    @property
    def log_file(self) -> Path | None:
        """Currently attached log file."""
        return self._log_file
