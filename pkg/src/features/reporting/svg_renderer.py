"""
SVG rendering of episodes and repertoires.

Frames are painted with ``QPainter`` on a ``QSvgGenerator``; a
``QGuiApplication`` is created on the offscreen platform when none
exists yet.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Sequence

import numpy as np
from PySide6.QtCore import QPointF, QRect, QSize, Qt
from PySide6.QtGui import QBrush, QColor, QGuiApplication, QPainter, QPen, QPolygonF
from PySide6.QtSvg import QSvgGenerator

from src.core.exceptions import RepositoryError
from src.features.grasp_env.contact import gripper_segments, to_world_frame
from src.features.grasp_env.geometry import create_shape
from src.features.grasp_env.kinematics import joint_positions
from src.features.metrics.coverage import Bounds, workspace_bounds
from src.models.run_config import EnvConfig
from src.models.trajectory import Trajectory
from src.utils.helpers import ensure_dir_exists

CANVAS_PX = 600
MARGIN_PX = 20
REPERTOIRE_SAMPLE = 250

ARM_COLOR = QColor(60, 60, 60)
GRIPPER_COLOR = QColor(0, 120, 212)
OBJECT_COLOR = QColor(230, 126, 34)
TABLE_COLOR = QColor(150, 150, 150)


def ensure_gui_application() -> QGuiApplication:
    """Existing Qt application, or a new offscreen one."""
    app = QGuiApplication.instance()
    if app is None:
        os.environ.setdefault("QT_QPA_PLATFORM", "offscreen")
        app = QGuiApplication([])
    return app


def time_color(fraction: float) -> QColor:
    """Blue at the start of an episode, red at the end."""
    fraction = min(max(float(fraction), 0.0), 1.0)
    return QColor.fromHsvF((1.0 - fraction) * 0.66, 0.85, 0.9)


class SceneCanvas:
    """
    World-to-pixel mapping and drawing primitives over one SVG file.

    Usage:
        with SceneCanvas(path, bounds) as canvas:
            canvas.draw_path(points, 0.0, 1.0)
    """

    def __init__(self, path: Path, bounds: Bounds, title: str = "") -> None:
        ensure_gui_application()
        self._path = Path(path)
        x_min, y_min, x_max, y_max = bounds
        self._origin = (x_min, y_max)
        self._scale = (CANVAS_PX - 2 * MARGIN_PX) / max(x_max - x_min, y_max - y_min)
        self._generator = QSvgGenerator()
        self._generator.setFileName(str(self._path))
        self._generator.setSize(QSize(CANVAS_PX, CANVAS_PX))
        self._generator.setViewBox(QRect(0, 0, CANVAS_PX, CANVAS_PX))
        self._generator.setTitle(title)
        self._painter: QPainter | None = None

    def __enter__(self) -> SceneCanvas:
        ensure_dir_exists(self._path.parent)
        painter = QPainter()
        if not painter.begin(self._generator):
            raise RepositoryError(f"Cannot open SVG file {self._path}", path=str(self._path))
        painter.setRenderHint(QPainter.RenderHint.Antialiasing)
        painter.fillRect(QRect(0, 0, CANVAS_PX, CANVAS_PX), QColor(255, 255, 255))
        self._painter = painter
        return self

    def __exit__(self, *exc: object) -> None:
        if self._painter is not None:
            self._painter.end()
            self._painter = None

    def point(self, xy: Sequence[float]) -> QPointF:
        return QPointF(
            MARGIN_PX + (float(xy[0]) - self._origin[0]) * self._scale,
            MARGIN_PX + (self._origin[1] - float(xy[1])) * self._scale,
        )

    def _pen(self, color: QColor, width: float) -> QPen:
        pen = QPen(color)
        pen.setWidthF(width)
        pen.setCapStyle(Qt.PenCapStyle.RoundCap)
        return pen

    def draw_polyline(self, points: np.ndarray, color: QColor, width: float = 1.0, closed: bool = False) -> None:
        polygon = QPolygonF([self.point(p) for p in points])
        self._painter.setPen(self._pen(color, width))
        if closed:
            self._painter.setBrush(QBrush(color.lighter(160)))
            self._painter.drawPolygon(polygon)
            self._painter.setBrush(Qt.BrushStyle.NoBrush)
        else:
            self._painter.drawPolyline(polygon)

    def draw_path(self, points: np.ndarray, start: float = 0.0, end: float = 1.0, width: float = 1.0) -> None:
        """Polyline whose segments are colored by time between ``start`` and ``end``."""
        count = len(points)
        for i in range(count - 1):
            fraction = start + (end - start) * i / max(count - 2, 1)
            self._painter.setPen(self._pen(time_color(fraction), width))
            self._painter.drawLine(self.point(points[i]), self.point(points[i + 1]))

    def draw_table(self, bounds: Bounds) -> None:
        self.draw_polyline(np.array([[bounds[0], 0.0], [bounds[2], 0.0]]), TABLE_COLOR, 2.0)

    def draw_object(self, outline: np.ndarray, pose: np.ndarray) -> None:
        self.draw_polyline(to_world_frame(outline, pose), OBJECT_COLOR, 1.5, closed=True)

    def draw_arm(self, joints: np.ndarray, ee: np.ndarray, width: float, env: EnvConfig) -> None:
        self.draw_polyline(joint_positions(joints, env), ARM_COLOR, 3.0)
        for segment in gripper_segments(ee, width, env.gripper.finger_length):
            self.draw_polyline(segment, GRIPPER_COLOR, 2.0)

    def draw_label(self, text: str) -> None:
        self._painter.setPen(QPen(ARM_COLOR))
        self._painter.drawText(QPointF(MARGIN_PX, MARGIN_PX / 1.5), text)


def scene_bounds(env: EnvConfig) -> Bounds:
    """Workspace box, extended down to the table."""
    x_min, y_min, x_max, y_max = workspace_bounds(env)
    return (x_min, min(y_min, -0.05), x_max, y_max)


def frame_steps(steps: int, stride: int) -> list[int]:
    """Rendered steps: every ``stride``-th one plus the last."""
    stride = max(1, int(stride))
    indices = list(range(0, steps, stride))
    if indices[-1] != steps - 1:
        indices.append(steps - 1)
    return indices


def render_frames(trajectory: Trajectory, env: EnvConfig, directory: Path, stride: int = 10) -> list[Path]:
    """
    One SVG per rendered step: arm links, gripper, object and the
    end-effector path up to that step colored by time.

    Returns:
        Written files, in step order
    """
    directory = ensure_dir_exists(Path(directory))
    outline = create_shape(env.object).outline()
    bounds = scene_bounds(env)
    steps = trajectory.length
    written = []
    for t in frame_steps(steps, stride):
        path = directory / f"frame_{t:05d}.svg"
        with SceneCanvas(path, bounds, title=f"t={t}") as canvas:
            canvas.draw_table(bounds)
            canvas.draw_object(outline, trajectory.object_pose[t])
            if t > 0:
                canvas.draw_path(trajectory.ee_pose[: t + 1, :2], 0.0, t / max(steps - 1, 1))
            canvas.draw_arm(trajectory.joints[t], trajectory.ee_pose[t], float(trajectory.gripper[t]), env)
            canvas.draw_label(f"t={t} {trajectory.phase_at(t).name.lower()}")
        written.append(path)
    return written


def render_repertoire(
    trajectories: Sequence[Trajectory],
    env: EnvConfig,
    path: Path,
    sample: int = REPERTOIRE_SAMPLE,
    rng: np.random.Generator | None = None,
) -> int:
    """
    Overlay the end-effector paths of up to ``sample`` trajectories,
    each drawn up to its first contact (whole episode if it never touched).

    The sample is drawn without replacement with ``rng`` (first
    ``sample`` trajectories when no generator is given).

    Returns:
        Number of drawn trajectories
    """
    chosen = list(trajectories)
    if len(chosen) > sample:
        if rng is None:
            chosen = chosen[:sample]
        else:
            picks = np.sort(rng.choice(len(chosen), size=sample, replace=False))
            chosen = [chosen[i] for i in picks]
    bounds = scene_bounds(env)
    shape = create_shape(env.object)
    with SceneCanvas(Path(path), bounds, title=f"{len(chosen)} trajectories") as canvas:
        canvas.draw_table(bounds)
        canvas.draw_object(shape.outline(), np.asarray(env.object.initial_pose, dtype=float))
        for trajectory in chosen:
            end = len(trajectory.ee_pose) if trajectory.t_touch is None else trajectory.t_touch + 1
            canvas.draw_path(trajectory.ee_pose[:end, :2], width=0.6)
        canvas.draw_label(f"{len(chosen)} trajectories")
    return len(chosen)
