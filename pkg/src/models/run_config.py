"""
Run configuration models.

Holds every hyperparameter of a run (algorithm, mutation scales,
environment geometry, metric resolution) as immutable dataclasses,
plus the report-style ``validate_config``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from src.core.types import ShapeKind, Strategy
from src.models.base import BaseModel
from src.utils.helpers import stable_hash
from src.utils.validators import (
    validate_all_positive,
    validate_finite,
    validate_integer,
    validate_positive,
    validate_probability,
)

PI = math.pi
EXECUTION_FIELDS = ("workers", "audit_success_archive")


@dataclass(frozen=True)
class GripperConfig(BaseModel):
    """Parallel-jaw gripper geometry."""

    max_opening: float = 0.12
    finger_length: float = 0.06
    closure_steps: int = 20

    @property
    def closure_speed(self) -> float:
        """Opening lost per closing step."""
        return self.max_opening / self.closure_steps


@dataclass(frozen=True)
class ObjectConfig(BaseModel):
    """
    Object resting on the table line ``y = 0``.

    ``x`` is the horizontal position of the center; the height is
    derived so the lowest point touches the table.
    """

    shape: ShapeKind = ShapeKind.CIRCLE
    radius: float = 0.04
    half_extents: tuple[float, float] = (0.03, 0.04)
    x: float = 0.55

    @property
    def rest_height(self) -> float:
        if self.shape is ShapeKind.CIRCLE:
            return self.radius
        return self.half_extents[1]

    @property
    def initial_pose(self) -> tuple[float, float, float]:
        """(x, y, angle) of the object at step 0."""
        return (self.x, self.rest_height, 0.0)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ObjectConfig:
        return cls(
            shape=ShapeKind(data.get("shape", ShapeKind.CIRCLE.value)),
            radius=float(data.get("radius", 0.04)),
            half_extents=tuple(float(v) for v in data.get("half_extents", (0.03, 0.04))),
            x=float(data.get("x", 0.55)),
        )


@dataclass(frozen=True)
class EnvConfig(BaseModel):
    """Planar grasping environment parameters."""

    backend: str = "planar"
    episode_length: int = 200
    link_lengths: tuple[float, ...] = (0.4, 0.3, 0.2)
    joint_limits: tuple[tuple[float, float], ...] = ((-PI, PI), (-PI, PI), (-PI, PI))
    base_position: tuple[float, float] = (0.0, 0.25)
    rest_config: tuple[float, ...] = (PI / 2, -PI / 2, -PI / 2)
    gripper: GripperConfig = field(default_factory=GripperConfig)
    object: ObjectConfig = field(default_factory=ObjectConfig)
    contact_tol: float = 1e-3
    friction: float = 0.5
    lift_threshold: float = 0.1
    closure_window: float = 0.9

    @property
    def n_joints(self) -> int:
        return len(self.link_lengths)

    @property
    def genome_length(self) -> int:
        return 3 * self.n_joints + 1

    @property
    def reach(self) -> float:
        """Arm length from base to the end-effector frame."""
        return float(sum(self.link_lengths))

    def env_hash(self) -> str:
        return stable_hash(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> EnvConfig:
        defaults = cls()
        return cls(
            backend=str(data.get("backend", defaults.backend)),
            episode_length=int(data.get("T", data.get("episode_length", defaults.episode_length))),
            link_lengths=tuple(float(v) for v in data.get("link_lengths", defaults.link_lengths)),
            joint_limits=tuple(
                (float(lo), float(hi)) for lo, hi in data.get("joint_limits", defaults.joint_limits)
            ),
            base_position=tuple(float(v) for v in data.get("base_position", defaults.base_position)),
            rest_config=tuple(float(v) for v in data.get("rest_config", defaults.rest_config)),
            gripper=GripperConfig.from_dict(data.get("gripper", {})),
            object=ObjectConfig.from_dict(data.get("object", {})),
            contact_tol=float(data.get("contact_tol", defaults.contact_tol)),
            friction=float(data.get("friction", defaults.friction)),
            lift_threshold=float(data.get("lift_threshold", defaults.lift_threshold)),
            closure_window=float(data.get("closure_window", defaults.closure_window)),
        )

    def to_dict(self) -> dict[str, Any]:
        data = super().to_dict()
        data["T"] = data.pop("episode_length")
        return data


@dataclass(frozen=True)
class MutationParams(BaseModel):
    """Gaussian mutation scales, in normalized gene units."""

    sigma_big: float = 0.3
    sigma_small: float = 0.01
    sigma_uniform: float = 0.1


@dataclass(frozen=True)
class MetricsConfig(BaseModel):
    """
    Coverage resolution.

    ``bounds`` is (x_min, y_min, x_max, y_max); None means the arm's
    reachable bounding box.
    """

    cell_size: float = 0.02
    surface_segment: float = 0.01
    bounds: tuple[float, float, float, float] | None = None

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> MetricsConfig:
        bounds = data.get("bounds")
        return cls(
            cell_size=float(data.get("cell_size", 0.02)),
            surface_segment=float(data.get("surface_segment", 0.01)),
            bounds=tuple(float(v) for v in bounds) if bounds is not None else None,
        )


@dataclass(frozen=True)
class RunConfig(BaseModel):
    """
    Every parameter of a single run.

    ``budget`` is the rollout budget N_rt; the generation count is
    derived from it (see ``generations``).
    """

    strategy: Strategy = Strategy.E2R
    seed: int = 1
    budget: int = 20000
    mu: int = 100
    lambda_: int = 50
    p_e: float = 0.5
    p_r: float = 0.5
    g_i: int = 500
    g_r: int = 10
    n_a: int = 10
    k: int = 15
    impatience_clears_archive: bool = True
    mutation: MutationParams = field(default_factory=MutationParams)
    env: EnvConfig = field(default_factory=EnvConfig)
    metrics: MetricsConfig = field(default_factory=MetricsConfig)
    workers: int = 1
    audit_success_archive: bool = True
    record_wall_time: bool = False

    @property
    def generations(self) -> int:
        """Offspring generations after the initial population."""
        if self.lambda_ < 1:
            return 0
        return max(0, math.ceil((self.budget - self.mu) / self.lambda_))

    def config_hash(self) -> str:
        """Hash of everything that can change results (worker count and auditing excluded)."""
        data = self.to_dict()
        for name in EXECUTION_FIELDS:
            data.pop(name)
        return stable_hash(data)

    def to_dict(self) -> dict[str, Any]:
        data = super().to_dict()
        data["lambda"] = data.pop("lambda_")
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunConfig:
        defaults = cls()
        return cls(
            strategy=Strategy.parse(data.get("strategy", defaults.strategy)),
            seed=int(data.get("seed", defaults.seed)),
            budget=int(data.get("budget", defaults.budget)),
            mu=int(data.get("mu", defaults.mu)),
            lambda_=int(data.get("lambda", data.get("lambda_", defaults.lambda_))),
            p_e=float(data.get("p_e", defaults.p_e)),
            p_r=float(data.get("p_r", defaults.p_r)),
            g_i=int(data.get("g_i", defaults.g_i)),
            g_r=int(data.get("g_r", defaults.g_r)),
            n_a=int(data.get("n_a", defaults.n_a)),
            k=int(data.get("k", defaults.k)),
            impatience_clears_archive=bool(
                data.get("impatience_clears_archive", defaults.impatience_clears_archive)
            ),
            mutation=MutationParams.from_dict(data.get("mutation", {})),
            env=EnvConfig.from_dict(data.get("env", {})),
            metrics=MetricsConfig.from_dict(data.get("metrics", {})),
            workers=int(data.get("workers", defaults.workers)),
            audit_success_archive=bool(data.get("audit_success_archive", defaults.audit_success_archive)),
            record_wall_time=bool(data.get("record_wall_time", defaults.record_wall_time)),
        )


@dataclass(frozen=True)
class ValidationReport:
    """Violated constraints of a configuration (empty when valid)."""

    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return bool(self.violations)

    def __contains__(self, item: str) -> bool:
        return item in self.violations

    def __iter__(self):
        return iter(self.violations)

    def __len__(self) -> int:
        return len(self.violations)


def validate_env(env: EnvConfig) -> list[str]:
    """Environment constraints, as human-readable violation strings."""
    problems: list[str] = []
    if not validate_integer(env.episode_length, 2):
        problems.append("T ≥ 2")
    if env.n_joints < 1 or not validate_all_positive(env.link_lengths):
        problems.append("link lengths > 0")
    if len(env.joint_limits) != env.n_joints or any(
        not (validate_finite(lo) and validate_finite(hi) and lo < hi) for lo, hi in env.joint_limits
    ):
        problems.append("joint limits: one [min < max] pair per joint")
    if len(env.rest_config) != env.n_joints:
        problems.append("rest configuration has one angle per joint")
    if len(env.base_position) != 2:
        problems.append("base position is a 2-D point")
    gripper = env.gripper
    if not (validate_positive(gripper.max_opening) and validate_positive(gripper.finger_length)):
        problems.append("gripper lengths > 0")
    if not validate_integer(gripper.closure_steps, 1):
        problems.append("gripper closure steps ≥ 1")
    obj = env.object
    if obj.shape is ShapeKind.CIRCLE and not validate_positive(obj.radius):
        problems.append("object radius > 0")
    if obj.shape is ShapeKind.BOX and (len(obj.half_extents) != 2 or not validate_all_positive(obj.half_extents)):
        problems.append("object half extents > 0")
    if not validate_positive(env.contact_tol):
        problems.append("contact_tol > 0")
    if not (validate_finite(env.friction) and env.friction >= 0):
        problems.append("friction ≥ 0")
    if not validate_positive(env.lift_threshold):
        problems.append("lift threshold > 0")
    if not (validate_finite(env.closure_window) and 0 < env.closure_window < 1):
        problems.append("closure window in (0, 1)")
    return problems


def validate_config(cfg: RunConfig) -> ValidationReport:
    """
    Check a run configuration against its invariants.

    Never raises; callers decide what an invalid configuration means.

    Args:
        cfg: Configuration to check

    Returns:
        Report listing every violated constraint
    """
    problems: list[str] = []
    if not validate_integer(cfg.lambda_, 1):
        problems.append("lambda ≥ 1")
    if not validate_integer(cfg.mu, 1) or cfg.mu < cfg.lambda_:
        problems.append("mu ≥ lambda")
    if not validate_integer(cfg.k, 1):
        problems.append("k ≥ 1")
    if not (validate_probability(cfg.p_e) and validate_probability(cfg.p_r)):
        problems.append("p_e, p_r in [0, 1]")
    if not math.isclose(cfg.p_e + cfg.p_r, 1.0, rel_tol=0.0, abs_tol=1e-9):
        problems.append("p_e + p_r = 1")
    if not validate_integer(cfg.g_i, 1):
        problems.append("G_I > 0")
    if not validate_integer(cfg.g_r, 1):
        problems.append("G_R > 0")
    if not validate_integer(cfg.n_a, 0) or cfg.n_a > cfg.lambda_:
        problems.append("n_a ≤ lambda")
    if not validate_integer(cfg.budget, 1):
        problems.append("budget ≥ 1")
    if not validate_integer(cfg.workers, 1):
        problems.append("workers ≥ 1")

    sigmas = cfg.mutation
    if not all(validate_finite(s) for s in (sigmas.sigma_big, sigmas.sigma_small, sigmas.sigma_uniform)):
        problems.append("mutation scales finite")
    elif not (0 <= sigmas.sigma_small < sigmas.sigma_big) or sigmas.sigma_uniform < 0:
        problems.append("0 ≤ sigma_small < sigma_big")

    if not (validate_positive(cfg.metrics.cell_size) and validate_positive(cfg.metrics.surface_segment)):
        problems.append("metric resolutions > 0")
    bounds = cfg.metrics.bounds
    if bounds is not None and (len(bounds) != 4 or bounds[0] >= bounds[2] or bounds[1] >= bounds[3]):
        problems.append("metric bounds (x_min, y_min, x_max, y_max) with min < max")

    problems.extend(validate_env(cfg.env))
    return ValidationReport(tuple(problems))
