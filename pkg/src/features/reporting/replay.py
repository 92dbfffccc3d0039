"""
Deterministic replay of a genome with a per-step trace.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Any, NamedTuple

from src.core.exceptions import RepositoryError
from src.features.grasp_env.base import GraspEnvironment, resolve_environment
from src.features.reporting.svg_renderer import render_frames
from src.models.genome import Genome
from src.models.run_config import EnvConfig
from src.models.trajectory import Trajectory

EVENT_CLOSE = "close"
EVENT_TOUCH = "touch"
EVENT_GRASP = "grasp"


class Replay(NamedTuple):
    """A replayed rollout and the files written for it."""

    trajectory: Trajectory
    trace_path: Path
    frames: list[Path]


def trace_columns(n_joints: int) -> list[str]:
    return (
        ["t"]
        + [f"q{j}" for j in range(n_joints)]
        + ["ee_x", "ee_y", "ee_theta", "gripper", "object_x", "object_y", "object_theta", "phase", "contact", "events"]
    )


def step_events(trajectory: Trajectory, t: int) -> str:
    """Events of step ``t`` joined with ``|``; each event marks one step only."""
    events = []
    if trajectory.t_close == t:
        events.append(EVENT_CLOSE)
    if trajectory.t_touch == t:
        events.append(EVENT_TOUCH)
    if trajectory.grasp_established_at == t:
        events.append(EVENT_GRASP)
    return "|".join(events)


def trace_rows(trajectory: Trajectory) -> list[list[Any]]:
    rows = []
    for t in range(trajectory.length):
        rows.append(
            [t]
            + [repr(float(q)) for q in trajectory.joints[t]]
            + [repr(float(v)) for v in trajectory.ee_pose[t]]
            + [repr(float(trajectory.gripper[t]))]
            + [repr(float(v)) for v in trajectory.object_pose[t]]
            + [trajectory.phase_at(t).name.lower(), int(bool(trajectory.contacts[t])), step_events(trajectory, t)]
        )
    return rows


def write_trace(trajectory: Trajectory, path: Path) -> None:
    """Per-step table of a trajectory."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(trace_columns(trajectory.joints.shape[1]))
            writer.writerows(trace_rows(trajectory))
    except OSError as e:
        raise RepositoryError(f"Failed to write {path}: {e}", path=str(path))


def replay_trace(
    genome: Genome,
    env: EnvConfig,
    path: Path,
    svg_dir: Path | None = None,
    frame_stride: int = 10,
    environment: GraspEnvironment | None = None,
) -> Replay:
    """
    Re-run a rollout and write its trace (and SVG frames when ``svg_dir`` is set).

    Args:
        genome: Genome to replay
        env: Environment configuration
        path: Trace file
        svg_dir: Directory for frames, or None
        frame_stride: Steps between frames
        environment: Environment instance (defaults to the configured backend)
    """
    environment = environment or resolve_environment(env)
    trajectory = environment.rollout(genome)
    write_trace(trajectory, path)
    frames = render_frames(trajectory, env, svg_dir, frame_stride) if svg_dir is not None else []
    return Replay(trajectory, Path(path), frames)


def read_trace(path: Path) -> list[dict[str, str]]:
    """Rows of a trace file as dictionaries."""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            return list(csv.DictReader(f))
    except OSError as e:
        raise RepositoryError(f"Failed to read {path}: {e}", path=str(path))
