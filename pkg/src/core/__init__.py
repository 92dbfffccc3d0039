"""
Core infrastructure module.

Contains fundamental components for the toolkit:
- DI Container
- Event Bus (Signals)
- Custom Exceptions
- Type definitions
"""

from src.core.container import Container, container
from src.core.signals import EventBus, event_bus
from src.core.types import ExitCode, MutationKind, Phase, ShapeKind, Slot, Strategy
from src.core.exceptions import (
    AppException,
    ConfigurationError,
    ContractViolation,
    DataIntegrityError,
    IncompatibleArtifactError,
    RepositoryError,
    ServiceError,
    StructuralError,
    ValidationError,
)

__all__ = [
    "Container",
    "container",
    "EventBus",
    "event_bus",
    "ExitCode",
    "MutationKind",
    "Phase",
    "ShapeKind",
    "Slot",
    "Strategy",
    "AppException",
    "ConfigurationError",
    "ContractViolation",
    "DataIntegrityError",
    "IncompatibleArtifactError",
    "RepositoryError",
    "ServiceError",
    "StructuralError",
    "ValidationError",
]
