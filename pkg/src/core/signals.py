"""
Global Event Bus using Qt Signals.

Implements the Observer pattern for decoupled communication
between the engine, the CLI and the logging service.
"""

from __future__ import annotations

from PySide6.QtCore import QObject, Signal


class EventBus(QObject):
    """
    Global Event Bus for run lifecycle notifications.

    Signals are emitted from the engine's reducer thread only; the
    receivers are plain callables, so delivery is synchronous.

    Usage:
        # Subscribe to an event
        event_bus.generation_completed.connect(my_handler)

        # Emit an event
        event_bus.generation_completed.emit(log)
    """

    _instance: EventBus | None = None

    # Run lifecycle
    run_started = Signal(str, dict)  # run label, run parameters
    generation_completed = Signal(object)  # GenerationLog
    impatience_triggered = Signal(str, int)  # run label, generation
    regeneration_triggered = Signal(str, int, int)  # run label, generation, injected count
    run_finished = Signal(str, object)  # run label, RunSummary

    # Diagnostics
    warning_occurred = Signal(str, str)  # warning_type, message
    error_occurred = Signal(str, str)  # error_type, message

    def __new__(cls) -> EventBus:
        """Ensure singleton instance."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self) -> None:
        """Initialize the event bus."""
        if hasattr(self, "_initialized"):
            return
        super().__init__()
        self._initialized = True

    def emit_warning(self, warning_type: str, message: str) -> None:
        """
        Convenience method to emit a warning event.

        Args:
            warning_type: Type/category of warning
            message: Warning message
        """
        self.warning_occurred.emit(warning_type, message)

    def emit_error(self, error_type: str, message: str) -> None:
        """
        Convenience method to emit an error event.

        Args:
            error_type: Type/category of error
            message: Error message
        """
        self.error_occurred.emit(error_type, message)


# Global event bus instance
event_bus = EventBus()
