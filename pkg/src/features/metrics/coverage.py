"""
Approach and grasp coverage.

Only successful trajectories count. Approach coverage follows the
end-effector up to the first contact; what the arm does with the object
afterwards is not part of the approach. Both structures are occupancy
bitsets, so coverage never decreases and duplicates change nothing.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from src.core.exceptions import DataIntegrityError
from src.core.signals import event_bus
from src.features.grasp_env.geometry import Shape, create_shape
from src.models.run_config import EnvConfig, MetricsConfig
from src.models.trajectory import Trajectory

Bounds = tuple[float, float, float, float]


def workspace_bounds(env: EnvConfig) -> Bounds:
    """Bounding box of everything the end-effector can reach."""
    bx, by = env.base_position
    reach = env.reach
    return (bx - reach, by - reach, bx + reach, by + reach)


def _cells(span: float, size: float) -> int:
    return max(1, math.ceil(span / size - 1e-9))


class CoverageGrid:
    """
    Occupancy grid over the operational space.

    Usage:
        grid = CoverageGrid((0.0, 0.0, 1.0, 1.0), cell_size=0.1)
        grid.mark(trajectory.ee_pose[:, :2])
        grid.ratio
    """

    def __init__(self, bounds: Bounds, cell_size: float) -> None:
        self.bounds = tuple(float(b) for b in bounds)
        self.cell_size = float(cell_size)
        x_min, y_min, x_max, y_max = self.bounds
        self.shape = (_cells(y_max - y_min, cell_size), _cells(x_max - x_min, cell_size))
        self.occupancy = np.zeros(self.shape, dtype=bool)

    @classmethod
    def for_environment(cls, env: EnvConfig, metrics: MetricsConfig) -> CoverageGrid:
        return cls(metrics.bounds or workspace_bounds(env), metrics.cell_size)

    def empty_like(self) -> CoverageGrid:
        return CoverageGrid(self.bounds, self.cell_size)

    @property
    def total_cells(self) -> int:
        return int(self.occupancy.size)

    @property
    def occupied_cells(self) -> int:
        return int(self.occupancy.sum())

    @property
    def ratio(self) -> float:
        return self.occupied_cells / self.total_cells

    def mark(self, positions: np.ndarray) -> int:
        """
        Occupy the cells of ``positions`` (N, 2).

        Out-of-box positions count in the nearest border cell.

        Returns:
            Number of clamped positions
        """
        positions = np.atleast_2d(np.asarray(positions, dtype=float))
        if positions.size == 0:
            return 0
        x_min, y_min, x_max, y_max = self.bounds
        outside = (
            (positions[:, 0] < x_min) | (positions[:, 0] > x_max)
            | (positions[:, 1] < y_min) | (positions[:, 1] > y_max)
        )
        cols = np.clip(np.floor((positions[:, 0] - x_min) / self.cell_size).astype(int), 0, self.shape[1] - 1)
        rows = np.clip(np.floor((positions[:, 1] - y_min) / self.cell_size).astype(int), 0, self.shape[0] - 1)
        self.occupancy[rows, cols] = True
        clamped = int(outside.sum())
        if clamped:
            event_bus.emit_warning(
                "coverage",
                f"{clamped} end-effector positions outside the coverage box {self.bounds} were clamped",
            )
        return clamped

    def merge(self, other: CoverageGrid) -> None:
        """Union with a grid of identical layout."""
        self.occupancy |= other.occupancy


class SurfaceDiscretization:
    """
    Object boundary cut into equal segments of about ``segment_length``.

    Usage:
        surface = SurfaceDiscretization(Circle(0.04), 0.01)   # 25 segments
        surface.mark(trajectory.touch_point)
    """

    def __init__(self, shape: Shape, segment_length: float) -> None:
        self.shape = shape
        self.count = shape.segment_count(segment_length)
        self.hits = np.zeros(self.count, dtype=bool)

    @classmethod
    def for_environment(cls, env: EnvConfig, metrics: MetricsConfig) -> SurfaceDiscretization:
        return cls(create_shape(env.object), metrics.surface_segment)

    def empty_like(self) -> SurfaceDiscretization:
        return SurfaceDiscretization(self.shape, self.shape.perimeter / self.count)

    @property
    def ratio(self) -> float:
        return int(self.hits.sum()) / self.count

    def mark(self, points: np.ndarray | tuple[float, float]) -> None:
        """Hit the segments containing object-frame boundary points."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        self.hits[self.shape.segment_index(points, self.count)] = True

    def merge(self, other: SurfaceDiscretization) -> None:
        self.hits |= other.hits


def approach_path(trajectory: Trajectory) -> np.ndarray:
    """
    End-effector positions (n, 2) from the first step to the first contact.

    Raises:
        DataIntegrityError: If the trajectory never touched the object
    """
    if trajectory.t_touch is None:
        raise DataIntegrityError("Successful trajectory without a first contact")
    return trajectory.ee_pose[: trajectory.t_touch + 1, :2]


def mark_success(grid: CoverageGrid, surface: SurfaceDiscretization, trajectory: Trajectory) -> None:
    """
    Add one successful trajectory to both coverages.

    Raises:
        DataIntegrityError: If the success has no first-contact point
    """
    if trajectory.touch_point is None:
        raise DataIntegrityError("Successful trajectory without a first-contact point")
    grid.mark(approach_path(trajectory))
    surface.mark(trajectory.touch_point)


def approach_coverage(successes: Iterable[Trajectory], grid: CoverageGrid) -> float:
    """
    Share of grid cells the end-effector of successful trajectories
    crosses on its way to the object.

    Raises:
        DataIntegrityError: If a success has no first contact
    """
    fresh = grid.empty_like()
    for trajectory in successes:
        fresh.mark(approach_path(trajectory))
    return fresh.ratio


def grasp_coverage(successes: Iterable[Trajectory], surface: SurfaceDiscretization) -> float:
    """
    Share of boundary segments holding a first contact of a successful trajectory.

    Raises:
        DataIntegrityError: If a success has no first-contact point
    """
    fresh = surface.empty_like()
    for trajectory in successes:
        if trajectory.touch_point is None:
            raise DataIntegrityError("Successful trajectory without a first-contact point")
        fresh.mark(trajectory.touch_point)
    return fresh.ratio
