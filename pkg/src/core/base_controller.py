"""
Base controller class.

Long-running work (an evolutionary run, a batch) lives in a
controller: it resolves the common services and reports through its
own signals and the global event bus.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from PySide6.QtCore import QObject, Signal

from src.core.container import container
from src.core.signals import event_bus

if TYPE_CHECKING:
    from src.services.config_service import ConfigService
    from src.services.logger_service import LoggerService


class BaseController(QObject):
    """
    Base class for all controllers.

    Provides:
    - LoggerService and ConfigService from the DI container (or the
      singletons when nothing is registered)
    - Running state with started/finished signals
    - Progress reporting in work units (rollouts for the engine)
    - Error reporting to the logger and the event bus
    """

    started = Signal()
    finished = Signal()
    progress = Signal(int, int)  # done, total
    error_occurred = Signal(str)  # error message

    def __init__(self, parent: QObject | None = None) -> None:
        super().__init__(parent)
        self._is_running = False
        self._setup_services()

    def _setup_services(self) -> None:
        from src.services.config_service import ConfigService
        from src.services.logger_service import LoggerService

        self._logger = container.resolve_or_default(LoggerService, LoggerService)
        self._config = container.resolve_or_default(ConfigService, ConfigService)

    @property
    def logger(self) -> LoggerService:
        return self._logger

    @property
    def config(self) -> ConfigService:
        return self._config

    def set_running(self, running: bool) -> None:
        """Switch the running state and emit started/finished."""
        self._is_running = running
        if running:
            self.started.emit()
        else:
            self.finished.emit()

    @property
    def is_running(self) -> bool:
        return self._is_running

    def report_progress(self, done: int, total: int) -> None:
        """Emit ``progress``; ``done`` may overshoot ``total`` on the last step."""
        self.progress.emit(int(done), int(total))

    def handle_error(self, error: Exception, context: str = "") -> None:
        """
        Log an error and broadcast it.

        Args:
            error: The exception that occurred
            context: Optional prefix (the run label for the engine)
        """
        message = str(error)
        if context:
            message = f"{context}: {message}"

        self._logger.error(message, exc_info=True)
        self.error_occurred.emit(message)
        event_bus.emit_error(type(error).__name__, message)
