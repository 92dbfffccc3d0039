"""
Base model class.

Provides common functionality for all data models.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields
from enum import Enum
from typing import Any, TypeVar

T = TypeVar("T", bound="BaseModel")


def to_plain(value: Any) -> Any:
    """Convert models, enums and tuples into JSON-friendly values."""
    if isinstance(value, BaseModel):
        return value.to_dict()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: to_plain(v) for k, v in value.items()}
    return value


@dataclass(frozen=True)
class BaseModel:
    """
    Base class for all data models.

    Models are immutable: build a changed copy with ``copy(**changes)``.

    Provides common functionality:
    - Serialization to plain dictionaries
    - Validation hook run on construction

    Usage:
        @dataclass(frozen=True)
        class Waypoint(BaseModel):
            joints: tuple[float, ...]
    """

    def __post_init__(self) -> None:
        """Called after dataclass initialization."""
        self.validate()

    def validate(self) -> None:
        """
        Validate the model.

        Override in subclasses to add validation logic.
        Raise ValidationError if validation fails.
        """
        pass

    def to_dict(self) -> dict[str, Any]:
        """
        Convert model to dictionary.

        Returns:
            Dictionary representation of the model
        """
        return {f.name: to_plain(getattr(self, f.name)) for f in fields(self)}

    @classmethod
    def from_dict(cls: type[T], data: dict[str, Any]) -> T:
        """
        Create model from dictionary.

        Subclasses with nested models or enums override this.

        Args:
            data: Dictionary with model data

        Returns:
            New model instance
        """
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in names})

    def copy(self: T, **changes: Any) -> T:
        """
        Create a copy with optional changes.

        Args:
            **changes: Fields to change in the copy

        Returns:
            New model instance
        """
        return dataclasses.replace(self, **changes)
