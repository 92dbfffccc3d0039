"""
Object shapes.

Every query works in the object frame (center at the origin, no
rotation) and is vectorized over N segments. Signed distances are
negative when a segment penetrates the shape; the value is then
minus the penetration depth.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from src.core.types import ShapeKind
from src.models.run_config import ObjectConfig

_EPS = 1e-12


@dataclass(frozen=True)
class SegmentContact:
    """
    Result of a segment query (object frame).

    Attributes:
        distance: (N,) signed distance
        point: (N, 2) closest boundary point
        normal: (N, 2) outward unit normal at ``point``
    """

    distance: np.ndarray
    point: np.ndarray
    normal: np.ndarray

    def __getitem__(self, index: int) -> tuple[float, np.ndarray, np.ndarray]:
        return float(self.distance[index]), self.point[index], self.normal[index]


def point_segment_closest(points: np.ndarray, starts: np.ndarray, ends: np.ndarray) -> np.ndarray:
    """Closest points on segments ``starts→ends`` to ``points`` (broadcasting)."""
    direction = ends - starts
    length_sq = np.sum(direction * direction, axis=-1)
    t = np.sum((points - starts) * direction, axis=-1) / np.where(length_sq > _EPS, length_sq, 1.0)
    t = np.clip(np.where(length_sq > _EPS, t, 0.0), 0.0, 1.0)
    return starts + t[..., None] * direction


class Shape(ABC):
    """Convex object outline."""

    kind: ShapeKind

    @property
    @abstractmethod
    def perimeter(self) -> float:
        """Boundary length."""

    @property
    @abstractmethod
    def rest_height(self) -> float:
        """Center height when resting on the table."""

    @abstractmethod
    def query(self, starts: np.ndarray, ends: np.ndarray) -> SegmentContact:
        """Signed distance, boundary point and outward normal for each segment."""

    @abstractmethod
    def arc_position(self, points: np.ndarray) -> np.ndarray:
        """Curvilinear abscissa in [0, perimeter) of boundary points (N, 2)."""

    @abstractmethod
    def outline(self, samples: int = 64) -> np.ndarray:
        """Closed polyline (samples, 2) for drawing."""

    def segment_count(self, target_length: float) -> int:
        """Number of equal boundary segments closest to ``target_length`` each."""
        return max(1, int(round(self.perimeter / target_length)))

    def segment_index(self, points: np.ndarray, count: int) -> np.ndarray:
        """Index of the boundary segment containing each point."""
        s = self.arc_position(np.atleast_2d(points)) / self.perimeter
        return np.minimum((s * count).astype(int), count - 1)


class Circle(Shape):
    """Disc of given radius."""

    kind = ShapeKind.CIRCLE

    def __init__(self, radius: float) -> None:
        self.radius = float(radius)

    @property
    def perimeter(self) -> float:
        return 2.0 * math.pi * self.radius

    @property
    def rest_height(self) -> float:
        return self.radius

    def query(self, starts: np.ndarray, ends: np.ndarray) -> SegmentContact:
        closest = point_segment_closest(np.zeros(2), starts, ends)
        dist = np.linalg.norm(closest, axis=-1)
        fallback = np.broadcast_to(np.array([0.0, 1.0]), closest.shape)
        normal = np.where(dist[..., None] > _EPS, closest / np.maximum(dist, _EPS)[..., None], fallback)
        return SegmentContact(dist - self.radius, self.radius * normal, normal)

    def arc_position(self, points: np.ndarray) -> np.ndarray:
        angle = np.mod(np.arctan2(points[..., 1], points[..., 0]), 2.0 * math.pi)
        return self.radius * angle

    def outline(self, samples: int = 64) -> np.ndarray:
        theta = np.linspace(0.0, 2.0 * math.pi, samples)
        return self.radius * np.column_stack([np.cos(theta), np.sin(theta)])


class Box(Shape):
    """
    Axis-aligned rectangle with half extents (hx, hy).

    The boundary abscissa starts at the lower-right corner and runs
    counter-clockwise.
    """

    kind = ShapeKind.BOX

    def __init__(self, half_extents: tuple[float, float]) -> None:
        self.half = np.asarray(half_extents, dtype=float)
        hx, hy = self.half
        self.corners = np.array([[hx, -hy], [hx, hy], [-hx, hy], [-hx, -hy]])

    @property
    def perimeter(self) -> float:
        return float(4.0 * (self.half[0] + self.half[1]))

    @property
    def rest_height(self) -> float:
        return float(self.half[1])

    def _face_normal(self, points: np.ndarray) -> np.ndarray:
        """Normal of the face nearest to each point (inside or on the box)."""
        margin = self.half - np.abs(points)
        use_x = margin[..., 0] <= margin[..., 1]
        sign = np.where(points >= 0, 1.0, -1.0)
        normal = np.zeros_like(points)
        normal[..., 0] = np.where(use_x, sign[..., 0], 0.0)
        normal[..., 1] = np.where(use_x, 0.0, sign[..., 1])
        return normal

    def _clip_interval(self, starts: np.ndarray, direction: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Parameter interval [t0, t1] of each segment inside the box."""
        hx, hy = self.half
        p = np.stack([-direction[:, 0], direction[:, 0], -direction[:, 1], direction[:, 1]], axis=1)
        q = np.stack([starts[:, 0] + hx, hx - starts[:, 0], starts[:, 1] + hy, hy - starts[:, 1]], axis=1)
        parallel = np.abs(p) <= _EPS
        outside = np.any(parallel & (q < 0), axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.where(parallel, 0.0, q / np.where(parallel, 1.0, p))
        entering = ~parallel & (p < 0)
        leaving = ~parallel & (p > 0)
        t0 = np.max(np.where(entering, r, 0.0), axis=1)
        t1 = np.min(np.where(leaving, r, 1.0), axis=1)
        hits = ~outside & (t0 <= t1)
        return hits, t0, t1

    def query(self, starts: np.ndarray, ends: np.ndarray) -> SegmentContact:
        starts = np.atleast_2d(starts).astype(float)
        ends = np.atleast_2d(ends).astype(float)
        n = starts.shape[0]
        direction = ends - starts
        hits, t0, t1 = self._clip_interval(starts, direction)

        # Separated: closest pair uses a segment endpoint or a box corner.
        endpoints = np.stack([starts, ends], axis=1)  # (N, 2, 2)
        projected = np.clip(endpoints, -self.half, self.half)
        endpoint_dist = np.linalg.norm(endpoints - projected, axis=-1)  # (N, 2)
        corner_closest = point_segment_closest(
            self.corners[None, :, :], starts[:, None, :], ends[:, None, :]
        )  # (N, 4, 2)
        corner_dist = np.linalg.norm(corner_closest - self.corners[None], axis=-1)  # (N, 4)
        all_dist = np.concatenate([endpoint_dist, corner_dist], axis=1)
        best = np.argmin(all_dist, axis=1)
        rows = np.arange(n)
        box_points = np.concatenate([projected, np.broadcast_to(self.corners, (n, 4, 2))], axis=1)[rows, best]
        seg_points = np.concatenate([endpoints, corner_closest], axis=1)[rows, best]
        gap = all_dist[rows, best]
        offset = seg_points - box_points
        normal = np.where(
            gap[:, None] > _EPS,
            offset / np.maximum(gap, _EPS)[:, None],
            self._face_normal(box_points),
        )
        distance = gap.copy()
        point = box_points.copy()

        # Penetrating: deepest point over candidate parameters.
        if np.any(hits):
            idx = np.flatnonzero(hits)
            s, d = starts[idx], direction[idx]
            lo, hi = t0[idx], t1[idx]
            diff = self.half[0] - self.half[1]
            with np.errstate(divide="ignore", invalid="ignore"):
                candidates = [
                    lo, hi,
                    -s[:, 0] / d[:, 0], -s[:, 1] / d[:, 1],
                    (diff - s[:, 0] + s[:, 1]) / (d[:, 0] - d[:, 1]),
                    (-diff - s[:, 0] + s[:, 1]) / (d[:, 0] - d[:, 1]),
                    (diff - s[:, 0] - s[:, 1]) / (d[:, 0] + d[:, 1]),
                    (-diff - s[:, 0] - s[:, 1]) / (d[:, 0] + d[:, 1]),
                ]
            ts = np.stack(candidates, axis=1)
            ts = np.where(np.isfinite(ts), ts, lo[:, None])
            ts = np.clip(ts, lo[:, None], hi[:, None])
            pts = s[:, None, :] + ts[..., None] * d[:, None, :]
            depth = np.min(self.half - np.abs(pts), axis=-1)
            deepest = np.argmax(depth, axis=1)
            inner = pts[np.arange(idx.size), deepest]
            face = self._face_normal(inner)
            surface = np.where(face != 0, face * self.half, inner)
            distance[idx] = -np.max(depth, axis=1)
            point[idx] = surface
            normal[idx] = face
        return SegmentContact(distance, point, normal)

    def arc_position(self, points: np.ndarray) -> np.ndarray:
        hx, hy = self.half
        points = np.atleast_2d(points)
        face = self._face_normal(np.clip(points, -self.half, self.half))
        x, y = points[:, 0], points[:, 1]
        right = hy + np.clip(y, -hy, hy)
        top = 2 * hy + hx - np.clip(x, -hx, hx)
        left = 2 * hy + 2 * hx + hy - np.clip(y, -hy, hy)
        bottom = 4 * hy + 2 * hx + hx + np.clip(x, -hx, hx)
        s = np.select(
            [face[:, 0] > 0, face[:, 1] > 0, face[:, 0] < 0],
            [right, top, left],
            default=bottom,
        )
        return np.mod(s, self.perimeter)

    def outline(self, samples: int = 64) -> np.ndarray:
        return np.vstack([self.corners, self.corners[:1]])


def create_shape(config: ObjectConfig) -> Shape:
    """Build the shape described by an object configuration."""
    if config.shape is ShapeKind.CIRCLE:
        return Circle(config.radius)
    return Box(config.half_extents)
