"""
Planar grasping environment.

A kinematic 3-link arm with a parallel-jaw gripper tracks the cubic
setpoints of a genome, freezes while the gripper closes at constant
speed, then resumes its nominal schedule. Contacts are detected on
the gripper segments only; the object slides horizontally when pushed
and becomes rigidly attached to the gripper once an antipodal grasp is
established.

Rollouts are event driven: the steps between two contact events are
checked in one vectorized query.
"""

from __future__ import annotations

import numpy as np

from src.core.exceptions import StructuralError
from src.core.types import Phase
from src.features.grasp_env.base import GraspEnvironment
from src.features.grasp_env.contact import (
    LEFT_FINGER,
    PALM,
    RIGHT_FINGER,
    Contact,
    Penetration,
    antipodal_check,
    compose,
    gripper_segments,
    invert,
    push_resolve,
    rotation,
    to_object_frame,
)
from src.features.grasp_env.geometry import Shape, create_shape
from src.features.grasp_env.kinematics import decode_genome, ee_poses, interpolate
from src.models.genome import Genome
from src.models.run_config import EnvConfig
from src.models.trajectory import Trajectory

_BISECTION_STEPS = 50
FINGERS = [LEFT_FINGER, RIGHT_FINGER]


class _Episode:
    """Mutable per-rollout state, written row by row."""

    def __init__(self, config: EnvConfig, t_close: int) -> None:
        steps = config.episode_length
        self.joints = np.zeros((steps, config.n_joints))
        self.ee = np.zeros((steps, 3))
        self.gripper = np.zeros(steps)
        self.object = np.zeros((steps, 3))
        self.contacts = np.zeros(steps, dtype=bool)
        self.phases = np.zeros(steps, dtype=np.int8)
        self.object_pose = np.asarray(config.object.initial_pose, dtype=float)
        self.t_close = t_close
        self.t_touch: int | None = None
        self.touch_point: tuple[float, float] | None = None
        self.grasp_at: int | None = None

    def fill(self, rows: slice, joints, ee, width, phase: Phase, contacts=False) -> None:
        self.joints[rows] = joints
        self.ee[rows] = ee
        self.gripper[rows] = width
        self.object[rows] = self.object_pose
        self.contacts[rows] = contacts
        self.phases[rows] = phase

    def touch(self, t: int, point: np.ndarray) -> None:
        if self.t_touch is None:
            self.t_touch = t
            self.touch_point = (float(point[0]), float(point[1]))


class PlanarGraspEnv(GraspEnvironment):
    """
    Built-in planar backend.

    Usage:
        env = PlanarGraspEnv(EnvConfig())
        trajectory = env.rollout(genome)
    """

    def __init__(self, config: EnvConfig) -> None:
        super().__init__(config)
        self._shape: Shape = create_shape(config.object)
        self._limits = np.asarray(config.joint_limits, dtype=float)
        self._rest = np.asarray(config.rest_config, dtype=float)

    @property
    def shape(self) -> Shape:
        return self._shape

    def setpoints(self, genome: Genome) -> tuple[np.ndarray, int]:
        """Nominal (T, J) joint setpoints and closure step of a genome."""
        decoded = decode_genome(genome, self._config)
        return interpolate(self._rest, decoded.waypoints, self._config.episode_length, self._limits), decoded.t_close

    def rollout(self, genome: Genome) -> Trajectory:
        config = self._config
        if len(genome) != config.genome_length:
            raise StructuralError(
                f"Genome has {len(genome)} genes, environment expects {config.genome_length}",
                expected=config.genome_length,
                actual=len(genome),
            )
        steps = config.episode_length
        setpoints, t_close = self.setpoints(genome)
        nominal = ee_poses(setpoints, config)
        episode = _Episode(config, t_close)
        initial_height = episode.object_pose[1]

        self._free_motion(episode, 0, min(t_close, steps), setpoints, nominal, config.gripper.max_opening, Phase.APPROACH)
        closure_end, width, rel = self._close(episode, setpoints[t_close], nominal[t_close])

        if closure_end is not None and closure_end + 1 < steps:
            start = closure_end + 1
            if rel is not None:
                rows = slice(start, steps)
                episode.fill(rows, setpoints[rows], nominal[rows], width, Phase.POST_CLOSURE, contacts=True)
                episode.object[rows] = compose(nominal[rows], rel)
            else:
                self._free_motion(episode, start, steps, setpoints, nominal, width, Phase.POST_CLOSURE)

        success = bool(
            episode.grasp_at is not None
            and episode.object[steps - 1, 1] >= initial_height + config.lift_threshold
        )
        return Trajectory(
            joints=episode.joints,
            ee_pose=episode.ee,
            gripper=episode.gripper,
            object_pose=episode.object,
            contacts=episode.contacts,
            phases=episode.phases,
            t_close=t_close,
            t_touch=episode.t_touch,
            grasp_established_at=episode.grasp_at,
            success=success,
            touch_point=episode.touch_point,
        )

    def _query(
        self, ee: np.ndarray, widths: np.ndarray | float, object_pose: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Signed distances (n, 3), object-frame points and normals (n, 3, 2)."""
        ee = np.atleast_2d(ee)
        n = ee.shape[0]
        segments = gripper_segments(ee, widths, self._config.gripper.finger_length)
        local = to_object_frame(segments.reshape(-1, 2), object_pose).reshape(-1, 2, 2)
        result = self._shape.query(local[:, 0], local[:, 1])
        return (
            result.distance.reshape(n, 3),
            result.point.reshape(n, 3, 2),
            result.normal.reshape(n, 3, 2),
        )

    def _penetrations(self, distances: np.ndarray, normals: np.ndarray, object_pose: np.ndarray) -> list[Penetration]:
        world = normals @ rotation(float(object_pose[2])).T
        return [Penetration(world[i], float(-distances[i])) for i in range(len(distances)) if distances[i] < 0.0]

    def _free_motion(
        self,
        episode: _Episode,
        start: int,
        stop: int,
        setpoints: np.ndarray,
        nominal: np.ndarray,
        width: float,
        phase: Phase,
    ) -> None:
        """Track setpoints over [start, stop) with a fixed opening, pushing on contact."""
        tol = self._config.contact_tol
        t = start
        while t < stop:
            distances, points, normals = self._query(nominal[t:stop], width, episode.object_pose)
            touching = np.min(distances, axis=1) <= tol
            if not np.any(touching):
                episode.fill(slice(t, stop), setpoints[t:stop], nominal[t:stop], width, phase)
                return
            s = t + int(np.argmax(touching))
            episode.fill(slice(t, s), setpoints[t:s], nominal[t:s], width, phase)
            row = s - t
            first = int(np.argmin(distances[row]))
            episode.touch(s, points[row, first])
            episode.object_pose = push_resolve(
                episode.object_pose,
                self._penetrations(distances[row], normals[row], episode.object_pose),
            )
            episode.fill(slice(s, s + 1), setpoints[s], nominal[s], width, phase, contacts=True)
            t = s + 1

    def _close(
        self, episode: _Episode, q_frozen: np.ndarray, ee_frozen: np.ndarray
    ) -> tuple[int | None, float, np.ndarray | None]:
        """
        Constant-speed closure with the arm frozen.

        Returns:
            (last closing step or None if the episode ended first,
             final opening, object pose in the end-effector frame if grasped)
        """
        config = self._config
        steps = config.episode_length
        tol = config.contact_tol
        speed = config.gripper.closure_speed
        width = config.gripper.max_opening
        t = episode.t_close

        while t < steps:
            count = steps - t
            candidates = np.maximum(width - speed * np.arange(1, count + 1), 0.0)
            closed = np.flatnonzero(candidates == 0.0)
            if closed.size:
                candidates = candidates[:closed[0] + 1]
            ee_block = np.broadcast_to(ee_frozen, (candidates.size, 3))
            distances, points, normals = self._query(ee_block, candidates, episode.object_pose)
            finger_touch = np.min(distances[:, FINGERS], axis=1) <= tol
            palm_touch = distances[:, PALM] <= tol
            events = np.flatnonzero(finger_touch | (candidates == 0.0))
            last = int(events[0]) if events.size else candidates.size

            rows = slice(t, t + last)
            episode.fill(rows, q_frozen, ee_frozen, candidates[:last], Phase.CLOSING)
            episode.contacts[rows] = palm_touch[:last]
            if np.any(palm_touch[:last]):
                first = int(np.argmax(palm_touch[:last]))
                episode.touch(t + first, points[first, PALM])
            if not events.size:
                return None, float(candidates[-1]), None

            s = t + last
            new_width = float(candidates[last])
            d, p, n = distances[last], points[last], normals[last]
            both = bool(np.all(d[FINGERS] <= tol))
            if np.any(d <= tol):
                episode.touch(s, p[int(np.argmin(d))])

            if both:
                stop_width = self._contact_width(ee_frozen, new_width, width, episode.object_pose)
                d, p, n = (a[0] for a in self._query(ee_frozen, stop_width, episode.object_pose))
                episode.fill(slice(s, s + 1), q_frozen, ee_frozen, stop_width, Phase.CLOSING, contacts=True)
                rot = rotation(float(episode.object_pose[2]))
                contacts = [
                    Contact(p[i] @ rot.T + episode.object_pose[:2], n[i] @ rot.T) for i in FINGERS
                ]
                if antipodal_check(contacts[0], contacts[1], config.friction):
                    episode.grasp_at = s
                    return s, stop_width, compose(invert(ee_frozen), episode.object_pose)
                return s, stop_width, None

            episode.object_pose = push_resolve(episode.object_pose, self._penetrations(d[FINGERS], n[FINGERS], episode.object_pose))
            episode.fill(slice(s, s + 1), q_frozen, ee_frozen, new_width, Phase.CLOSING, contacts=bool(np.any(d <= tol)))
            if new_width == 0.0:
                return s, 0.0, None
            width = new_width
            t = s + 1
        return None, width, None

    def _contact_width(self, ee: np.ndarray, closed: float, opened: float, object_pose: np.ndarray) -> float:
        """Largest opening in [closed, opened] at which both fingers touch."""
        tol = self._config.contact_tol

        def both(w: float) -> bool:
            d = self._query(ee, w, object_pose)[0][0]
            return bool(np.all(d[FINGERS] <= tol))

        lo, hi = closed, opened
        for _ in range(_BISECTION_STEPS):
            mid = 0.5 * (lo + hi)
            if both(mid):
                lo = mid
            else:
                hi = mid
        return lo
