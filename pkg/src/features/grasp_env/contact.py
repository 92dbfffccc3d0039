"""
Gripper geometry, planar poses and contact resolution.

Gripper frame: approach axis a = (cos θ, sin θ), lateral axis
n = (-sin θ, cos θ). Each finger runs from p ± (w/2)·n along a for
the finger length; the palm joins the two finger roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

LEFT_FINGER = 0
RIGHT_FINGER = 1
PALM = 2


@dataclass(frozen=True)
class Contact:
    """Contact point and outward object normal (world frame)."""

    point: np.ndarray
    normal: np.ndarray


@dataclass(frozen=True)
class Penetration:
    """Overlap of one gripper segment with the object."""

    normal: np.ndarray
    depth: float


def gripper_segments(ee: np.ndarray, width: np.ndarray | float, finger_length: float) -> np.ndarray:
    """
    Gripper segments in the world frame.

    Args:
        ee: (..., 3) end-effector poses
        width: opening, scalar or broadcastable to ee[..., 0]
        finger_length: finger length

    Returns:
        (..., 3, 2, 2) array of [left finger, right finger, palm] as (start, end)
    """
    ee = np.asarray(ee, dtype=float)
    p = ee[..., :2]
    theta = ee[..., 2]
    approach = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    lateral = np.stack([-np.sin(theta), np.cos(theta)], axis=-1)
    half = (np.asarray(width, dtype=float) / 2.0)[..., None] * lateral
    left_root = p + half
    right_root = p - half
    reach = finger_length * approach
    left = np.stack([left_root, left_root + reach], axis=-2)
    right = np.stack([right_root, right_root + reach], axis=-2)
    palm = np.stack([right_root, left_root], axis=-2)
    return np.stack([left, right, palm], axis=-3)


def rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def to_object_frame(points: np.ndarray, object_pose: np.ndarray) -> np.ndarray:
    """World points expressed in the object frame."""
    return (np.asarray(points) - object_pose[:2]) @ rotation(float(object_pose[2]))


def to_world_frame(points: np.ndarray, object_pose: np.ndarray) -> np.ndarray:
    """Object-frame points (or directions, with ``object_pose[:2]`` zeroed) in the world frame."""
    return np.asarray(points) @ rotation(float(object_pose[2])).T + object_pose[:2]


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """SE(2) composition ``a ∘ b``; ``a`` may be (..., 3)."""
    a = np.asarray(a, dtype=float)
    c, s = np.cos(a[..., 2]), np.sin(a[..., 2])
    x = a[..., 0] + c * b[0] - s * b[1]
    y = a[..., 1] + s * b[0] + c * b[1]
    theta = math.pi - np.mod(math.pi - (a[..., 2] + b[2]), 2.0 * math.pi)
    return np.stack([x, y, theta], axis=-1)


def invert(pose: np.ndarray) -> np.ndarray:
    """SE(2) inverse."""
    c, s = math.cos(pose[2]), math.sin(pose[2])
    x = -(c * pose[0] + s * pose[1])
    y = -(-s * pose[0] + c * pose[1])
    return np.array([x, y, -pose[2]])


def antipodal_check(contact_1: Contact, contact_2: Contact, mu_f: float) -> bool:
    """
    Two-contact frictional force closure for a parallel jaw.

    True iff the angle between n1 and -n2 is at most 2·arctan(mu_f).
    """
    n1 = np.asarray(contact_1.normal, dtype=float)
    n2 = -np.asarray(contact_2.normal, dtype=float)
    cross = n1[0] * n2[1] - n1[1] * n2[0]
    dot = n1[0] * n2[0] + n1[1] * n2[1]
    return abs(math.atan2(cross, dot)) <= 2.0 * math.atan(mu_f)


def push_resolve(object_pose: np.ndarray, penetrations: Sequence[Penetration], eps: float = 1e-12) -> np.ndarray:
    """
    Quasi-static horizontal push.

    The object slides along x, away from the penetrating segment, by
    the penetration depth; its height never changes. Pushes from both
    sides in the same step jam the object. Same-side pushes apply the
    largest depth.

    Args:
        object_pose: (3,) current pose
        penetrations: overlaps, with outward object normals
        eps: horizontal normal components below this do not push

    Returns:
        New (3,) pose
    """
    shifts = [
        -math.copysign(p.depth, float(p.normal[0]))
        for p in penetrations
        if p.depth > 0.0 and abs(float(p.normal[0])) > eps
    ]
    pose = np.array(object_pose, dtype=float)
    if not shifts:
        return pose
    if min(shifts) < 0.0 < max(shifts):
        return pose
    pose[0] += max(shifts, key=abs)
    return pose
