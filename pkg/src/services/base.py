"""
Base service class.

Provides the singleton lifecycle shared by the toolkit services.
"""

from __future__ import annotations

from abc import ABC, ABCMeta

from PySide6.QtCore import QObject


# Resolve metaclass conflict between QObject and ABC
class ServiceMeta(type(QObject), ABCMeta):
    """Combined metaclass for QObject and ABC."""
    pass


class BaseService(QObject, ABC, metaclass=ServiceMeta):
    """
    Abstract base class for all services.

    Provides:
    - One instance per service type (process-wide)
    - QObject inheritance for signals
    - An ``_on_init`` hook that runs exactly once

    Services hold no run state: runs receive an immutable
    ``RunConfig`` and may execute concurrently.
    """

    _instances: dict[type, BaseService] = {}

    def __new__(cls) -> BaseService:
        """Ensure singleton instance per service type."""
        if cls not in cls._instances:
            cls._instances[cls] = super().__new__(cls)
        return cls._instances[cls]

    def __init__(self) -> None:
        """Initialize the service once."""
        if hasattr(self, "_initialized"):
            return

        if not hasattr(self, "_qobject_initialized"):
            super().__init__()
            self._qobject_initialized = True

        self._initialized = True
        self._on_init()

    def _on_init(self) -> None:
        """Service-specific initialization; override in subclasses."""
        pass

    def dispose(self) -> None:
        """Release resources held by the service (files, handlers)."""
        pass

    @classmethod
    def reset_instance(cls) -> None:
        """
        Drop the singleton instance.

        Useful for testing.
        """
        instance = cls._instances.pop(cls, None)
        if instance is not None:
            instance.dispose()
