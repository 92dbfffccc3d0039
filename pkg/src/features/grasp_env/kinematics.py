"""
Arm kinematics and open-loop setpoint generation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from src.models.genome import Genome
from src.models.run_config import EnvConfig


def wrap_angles(angles: np.ndarray | float) -> np.ndarray:
    """Wrap angles into (-pi, pi]."""
    return math.pi - np.mod(math.pi - np.asarray(angles, dtype=float), 2.0 * math.pi)


@dataclass(frozen=True)
class DecodedGenome:
    """Physical controller parameters: (3, J) joint waypoints and closure step."""

    waypoints: np.ndarray
    t_close: int


def decode_genome(genome: Genome, env: EnvConfig) -> DecodedGenome:
    """
    Map normalized genes to joint waypoints and the closure step.

    Each waypoint gene is mapped affinely from [-1, 1] onto its joint
    range; the closure gene onto [0, closure_window * T], rounded
    half up.
    """
    j = env.n_joints
    limits = np.asarray(env.joint_limits, dtype=float)
    lo, hi = limits[:, 0], limits[:, 1]
    genes = genome.array
    waypoints = lo + (genes[:3 * j].reshape(3, j) + 1.0) / 2.0 * (hi - lo)
    horizon = env.closure_window * env.episode_length
    t_close = int(math.floor((genome.closure_gene + 1.0) / 2.0 * horizon + 0.5))
    return DecodedGenome(waypoints, min(max(t_close, 0), int(math.floor(horizon))))


@lru_cache(maxsize=32)
def _lagrange_basis(steps: int) -> np.ndarray:
    """(steps, 4) Lagrange basis at t = 0..steps-1 for nodes 0, T/3, 2T/3, T."""
    basis = lagrange_basis(waypoint_nodes(steps), np.arange(steps, dtype=float))
    basis.setflags(write=False)
    return basis


def lagrange_basis(nodes: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Lagrange basis polynomials of ``nodes`` evaluated at ``t``: (len(t), len(nodes))."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    columns = []
    for i, xi in enumerate(nodes):
        numerator = np.ones_like(t)
        denominator = 1.0
        for m, xm in enumerate(nodes):
            if m != i:
                numerator = numerator * (t - xm)
                denominator *= xi - xm
        columns.append(numerator / denominator)
    return np.stack(columns, axis=1)


def waypoint_nodes(steps: int) -> np.ndarray:
    """Instants at which the rest pose and the three waypoints are reached."""
    return np.array([0.0, steps / 3.0, 2.0 * steps / 3.0, float(steps)])


def interpolate(
    q0: np.ndarray,
    waypoints: np.ndarray,
    steps: int,
    joint_limits: np.ndarray | None = None,
) -> np.ndarray:
    """
    Per-step joint setpoints.

    Per joint, the cubic through (0, q0), (T/3, w1), (2T/3, w2), (T, w3),
    sampled at t = 0..T-1 and clamped to the joint limits.

    Args:
        q0: (J,) rest configuration
        waypoints: (3, J) joint waypoints
        steps: Episode length T
        joint_limits: Optional (J, 2) limits

    Returns:
        (T, J) setpoints
    """
    values = np.vstack([np.asarray(q0, dtype=float)[None, :], np.asarray(waypoints, dtype=float)])
    setpoints = _lagrange_basis(steps) @ values
    if joint_limits is not None:
        limits = np.asarray(joint_limits, dtype=float)
        setpoints = np.clip(setpoints, limits[:, 0], limits[:, 1])
    return setpoints


def forward_kinematics(q: np.ndarray, env: EnvConfig) -> tuple[np.ndarray, np.ndarray]:
    """
    Planar serial-chain forward kinematics, vectorized over leading axes.

    Args:
        q: (..., J) joint angles
        env: Environment (base position, link lengths)

    Returns:
        (positions (..., 2), orientations (...)) of the end-effector
    """
    q = np.asarray(q, dtype=float)
    cumulative = np.cumsum(q, axis=-1)
    lengths = np.asarray(env.link_lengths, dtype=float)
    x = env.base_position[0] + np.sum(lengths * np.cos(cumulative), axis=-1)
    y = env.base_position[1] + np.sum(lengths * np.sin(cumulative), axis=-1)
    return np.stack([x, y], axis=-1), wrap_angles(cumulative[..., -1])


def joint_positions(q: np.ndarray, env: EnvConfig) -> np.ndarray:
    """(J+1, 2) positions of the base, each joint and the end-effector."""
    cumulative = np.cumsum(np.asarray(q, dtype=float))
    lengths = np.asarray(env.link_lengths, dtype=float)
    steps = np.column_stack([lengths * np.cos(cumulative), lengths * np.sin(cumulative)])
    return np.vstack([np.zeros(2), np.cumsum(steps, axis=0)]) + np.asarray(env.base_position)


def ee_poses(q: np.ndarray, env: EnvConfig) -> np.ndarray:
    """(..., 3) end-effector x, y, orientation."""
    positions, orientations = forward_kinematics(q, env)
    return np.concatenate([positions, orientations[..., None]], axis=-1)
