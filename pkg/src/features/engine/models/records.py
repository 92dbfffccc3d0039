"""
Per-generation and per-run records of the engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from src.core.exceptions import ValidationError
from src.core.types import Strategy
from src.models.base import BaseModel

METRIC_COLUMNS = (
    "generation",
    "rollouts",
    "successes_total",
    "archive_size",
    "approach_coverage",
    "grasp_coverage",
    "wall_time_s",
)


@dataclass(frozen=True)
class GenerationLog(BaseModel):
    """
    State of a run after one offspring generation.

    ``successes_total`` is the success archive size; ``new_successes``
    counts the offspring that succeeded in this generation.
    """

    generation: int
    rollouts: int
    successes_total: int
    archive_size: int
    new_successes: int
    approach_coverage: float
    grasp_coverage: float
    wall_time_s: float = 0.0

    def validate(self) -> None:
        for name in ("approach_coverage", "grasp_coverage"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name} outside [0, 1]", field=name, value=value)

    def row(self) -> dict[str, Any]:
        """Values of the metrics table columns."""
        return {name: getattr(self, name) for name in METRIC_COLUMNS}


@dataclass(frozen=True)
class RunSummary(BaseModel):
    """Outcome of one run."""

    strategy: Strategy
    seed: int
    config_hash: str
    env_hash: str
    success: bool
    repertoire_size: int
    rollouts: int
    generations: int
    first_success_rollout: int | None
    approach_coverage: float
    grasp_coverage: float
    impatience_generations: tuple[int, ...] = field(default_factory=tuple)
    regeneration_generations: tuple[int, ...] = field(default_factory=tuple)
    wall_time_s: float = 0.0

    @property
    def label(self) -> str:
        return f"{self.strategy.value}-seed{self.seed}"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunSummary:
        first = data.get("first_success_rollout")
        return cls(
            strategy=Strategy.parse(data["strategy"]),
            seed=int(data["seed"]),
            config_hash=str(data["config_hash"]),
            env_hash=str(data["env_hash"]),
            success=bool(data["success"]),
            repertoire_size=int(data["repertoire_size"]),
            rollouts=int(data["rollouts"]),
            generations=int(data["generations"]),
            first_success_rollout=int(first) if first is not None else None,
            approach_coverage=float(data["approach_coverage"]),
            grasp_coverage=float(data["grasp_coverage"]),
            impatience_generations=tuple(int(g) for g in data.get("impatience_generations", ())),
            regeneration_generations=tuple(int(g) for g in data.get("regeneration_generations", ())),
            wall_time_s=float(data.get("wall_time_s", 0.0)),
        )
