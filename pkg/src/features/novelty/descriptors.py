"""
Behavior extraction from trajectories.
"""

from __future__ import annotations

from src.features.grasp_env.kinematics import wrap_angles
from src.models.descriptor import BehaviorDescriptor
from src.models.trajectory import Trajectory


def extract_descriptors(trajectory: Trajectory, steps: int) -> BehaviorDescriptor:
    """
    Sample the five descriptor slots of an episode.

    Object position at the last step; end-effector pose at first
    contact (when there was one) and at step ``steps // 2``.

    Raises:
        StructuralError: If the trajectory does not have ``steps`` rows
    """
    trajectory.require_length(steps)
    ee = trajectory.ee_pose
    mid = ee[steps // 2]
    final = trajectory.object_pose[steps - 1]

    touch_position = touch_orientation = None
    if trajectory.t_touch is not None:
        touch = ee[trajectory.t_touch]
        touch_position = (float(touch[0]), float(touch[1]))
        touch_orientation = float(wrap_angles(touch[2]))

    return BehaviorDescriptor(
        object_final=(float(final[0]), float(final[1])),
        touch_position=touch_position,
        touch_orientation=touch_orientation,
        mid_position=(float(mid[0]), float(mid[1])),
        mid_orientation=float(wrap_angles(mid[2])),
    )
