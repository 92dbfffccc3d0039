"""
Trajectory model.

Per-step record of one episode, stored column-wise as read-only
numpy arrays (one row per step).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from src.core.exceptions import StructuralError, ValidationError
from src.core.types import Phase
from src.models.base import BaseModel


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Trajectory(BaseModel):
    """
    Episode record.

    Attributes:
        joints: (T, J) joint configuration per step
        ee_pose: (T, 3) end-effector x, y, orientation per step
        gripper: (T,) gripper opening per step
        object_pose: (T, 3) object x, y, angle per step
        contacts: (T,) whether the gripper touches the object
        phases: (T,) ``Phase`` value per step
        t_close: step at which closing starts
        t_touch: first contact step, if any
        grasp_established_at: step at which the grasp was established, if any
        success: grasp held at the last step and object lifted
        touch_point: first contact point in the object frame, if any
    """

    joints: np.ndarray
    ee_pose: np.ndarray
    gripper: np.ndarray
    object_pose: np.ndarray
    contacts: np.ndarray
    phases: np.ndarray
    t_close: int
    t_touch: int | None = None
    grasp_established_at: int | None = None
    success: bool = False
    touch_point: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        for name in ("joints", "ee_pose", "gripper", "object_pose", "contacts", "phases"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        super().__post_init__()

    def validate(self) -> None:
        steps = self.joints.shape[0]
        for name in ("ee_pose", "gripper", "object_pose", "contacts", "phases"):
            if getattr(self, name).shape[0] != steps:
                raise StructuralError(
                    f"Trajectory column '{name}' has {getattr(self, name).shape[0]} rows",
                    expected=steps,
                    actual=getattr(self, name).shape[0],
                )
        if self.grasp_established_at is not None:
            if self.t_touch is None or self.t_touch > self.grasp_established_at:
                raise ValidationError(
                    "Grasp established before first touch",
                    field="grasp_established_at",
                    value=self.grasp_established_at,
                )
        if self.success and self.grasp_established_at is None:
            raise ValidationError("Success without an established grasp", field="success")
        if (self.t_touch is None) != (self.touch_point is None):
            raise ValidationError("Touch point must accompany the touch step", field="touch_point")

    @property
    def length(self) -> int:
        return int(self.joints.shape[0])

    def __len__(self) -> int:
        return self.length

    def require_length(self, steps: int) -> None:
        """
        Raises:
            StructuralError: If the trajectory does not have ``steps`` steps
        """
        if self.length != steps:
            raise StructuralError(
                f"Trajectory has {self.length} steps, expected {steps}",
                expected=steps,
                actual=self.length,
            )

    def phase_at(self, t: int) -> Phase:
        return Phase(int(self.phases[t]))

    @property
    def closure_end(self) -> int | None:
        """Last closing step, or None when closing never ended."""
        closing = np.flatnonzero(self.phases == Phase.CLOSING)
        if closing.size == 0 or not np.any(self.phases == Phase.POST_CLOSURE):
            return None
        return int(closing[-1])

    def to_dict(self) -> dict[str, Any]:
        return {
            "steps": self.length,
            "t_close": self.t_close,
            "t_touch": self.t_touch,
            "grasp_established_at": self.grasp_established_at,
            "success": self.success,
            "touch_point": list(self.touch_point) if self.touch_point is not None else None,
        }

    def same_as(self, other: Trajectory) -> bool:
        """Bit-exact equality of every column and event."""
        columns = ("joints", "ee_pose", "gripper", "object_pose", "contacts", "phases")
        return self.to_dict() == other.to_dict() and all(
            np.array_equal(getattr(self, c), getattr(other, c)) for c in columns
        )
