"""
Type definitions and enumerations for the toolkit.

This module contains the enums and type aliases shared by
every feature package (strategies, mutation kinds, episode phases).
"""

from __future__ import annotations

from enum import Enum, IntEnum
from typing import Callable, TypeVar

# Type variables for generics
T = TypeVar("T")


class Strategy(Enum):
    """
    Search strategies driven by the engine.

    Use the value on the command line (``--strategy e2r``).
    """
    E2R = "e2r"
    NS = "ns"
    RANDOM = "random"
    MULTIBD = "multibd"

    @classmethod
    def parse(cls, value: str | Strategy) -> Strategy:
        """Resolve a strategy from its CLI value (case-insensitive)."""
        if isinstance(value, Strategy):
            return value
        try:
            return cls(value.strip().lower())
        except ValueError:
            valid = ", ".join(s.value for s in cls)
            raise ValueError(f"Unknown strategy '{value}' (expected one of: {valid})")


class MutationKind(Enum):
    """How an individual was produced."""
    INIT = "init"
    EXPLORE = "explore"
    REFINE = "refine"
    UNIFORM = "uniform"


class Phase(IntEnum):
    """Episode phases, in their only legal order."""
    APPROACH = 0
    CLOSING = 1
    POST_CLOSURE = 2


class Slot(IntEnum):
    """
    Behavior descriptor slots.

    Attributes:
        OBJECT_FINAL: object position at the last step (b1)
        TOUCH_POSITION: end-effector position at first contact (b2)
        TOUCH_ORIENTATION: end-effector orientation at first contact (b3)
        MID_POSITION: end-effector position at mid-episode (b4)
        MID_ORIENTATION: end-effector orientation at mid-episode (b5)
    """
    OBJECT_FINAL = 1
    TOUCH_POSITION = 2
    TOUCH_ORIENTATION = 3
    MID_POSITION = 4
    MID_ORIENTATION = 5

    @property
    def is_angular(self) -> bool:
        return self in (Slot.TOUCH_ORIENTATION, Slot.MID_ORIENTATION)

    @property
    def index(self) -> int:
        """Zero-based position in per-slot vectors."""
        return self.value - 1


class ShapeKind(Enum):
    """Supported object shapes."""
    CIRCLE = "circle"
    BOX = "box"


class ExitCode(IntEnum):
    """Process exit codes of the command-line interface."""
    OK = 0
    RUN_FAILED = 1
    USAGE = 2
    CONFIG_ERROR = 3
    IO_ERROR = 4
    VERIFICATION_FAILED = 5
    INCOMPATIBLE_ARTIFACT = 6


# Type aliases for common callback signatures
WarningCallback = Callable[[str, str], None]
