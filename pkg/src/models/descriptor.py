"""
Behavior descriptor model.

Five typed slots extracted from a rollout. The touch slots are
absent (None) when the rollout never touched the object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from src.core.exceptions import ContractViolation, ValidationError
from src.core.types import Slot
from src.models.base import BaseModel

Point = tuple[float, float]


def _in_wrapped_range(angle: float) -> bool:
    return -math.pi < angle <= math.pi


@dataclass(frozen=True)
class BehaviorDescriptor(BaseModel):
    """
    Behavior descriptor.

    Attributes:
        object_final: object position at the last step
        touch_position: end-effector position at first contact, or None
        touch_orientation: end-effector orientation at first contact, or None
        mid_position: end-effector position at mid-episode
        mid_orientation: end-effector orientation at mid-episode
    """

    object_final: Point
    touch_position: Point | None
    touch_orientation: float | None
    mid_position: Point
    mid_orientation: float

    def validate(self) -> None:
        if (self.touch_position is None) != (self.touch_orientation is None):
            raise ValidationError(
                "Touch position and orientation must be both set or both absent",
                field="touch_position",
            )
        for name in ("touch_orientation", "mid_orientation"):
            angle = getattr(self, name)
            if angle is not None and not _in_wrapped_range(angle):
                raise ValidationError(f"{name} not wrapped into (-pi, pi]", field=name, value=angle)

    @property
    def touched(self) -> bool:
        return self.touch_position is not None

    @property
    def eligible(self) -> tuple[bool, bool, bool, bool, bool]:
        """Eligibility flags, slot 1 first."""
        return (True, self.touched, self.touched, True, True)

    def is_eligible(self, slot: Slot) -> bool:
        return self.eligible[Slot(slot).index]

    def value(self, slot: Slot) -> np.ndarray:
        """
        Slot value as a 1-D array (2 entries for positions, 1 for angles).

        Raises:
            ContractViolation: If the slot is ineligible
        """
        slot = Slot(slot)
        if not self.is_eligible(slot):
            raise ContractViolation(f"Slot {slot.value} is not eligible", details={"slot": slot.value})
        raw = {
            Slot.OBJECT_FINAL: self.object_final,
            Slot.TOUCH_POSITION: self.touch_position,
            Slot.TOUCH_ORIENTATION: (self.touch_orientation,),
            Slot.MID_POSITION: self.mid_position,
            Slot.MID_ORIENTATION: (self.mid_orientation,),
        }[slot]
        return np.asarray(raw, dtype=float)

    def to_dict(self) -> dict[str, Any]:
        data = super().to_dict()
        data["eligible"] = list(self.eligible)
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> BehaviorDescriptor:
        touch = data.get("touch_position")
        orientation = data.get("touch_orientation")
        return cls(
            object_final=(float(data["object_final"][0]), float(data["object_final"][1])),
            touch_position=(float(touch[0]), float(touch[1])) if touch is not None else None,
            touch_orientation=float(orientation) if orientation is not None else None,
            mid_position=(float(data["mid_position"][0]), float(data["mid_position"][1])),
            mid_orientation=float(data["mid_orientation"]),
        )
