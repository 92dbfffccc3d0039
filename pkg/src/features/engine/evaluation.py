"""
Rollout evaluation.

Rollouts are pure, so a generation's genomes may run on a thread
pool; results always come back in input order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from src.features.grasp_env.base import GraspEnvironment
from src.features.novelty.descriptors import extract_descriptors
from src.models.descriptor import BehaviorDescriptor
from src.models.genome import Genome
from src.models.trajectory import Trajectory


@dataclass(frozen=True)
class Evaluation:
    """Outcome of one rollout."""

    genome: Genome
    trajectory: Trajectory
    descriptor: BehaviorDescriptor

    @property
    def success(self) -> bool:
        return self.trajectory.success


class Evaluator:
    """
    Runs rollouts, optionally on ``workers`` threads.

    Usage:
        with Evaluator(env, workers=4) as evaluator:
            results = evaluator.evaluate(genomes)
    """

    def __init__(self, environment: GraspEnvironment, workers: int = 1) -> None:
        self._environment = environment
        self._workers = max(1, int(workers))
        self._pool: ThreadPoolExecutor | None = None
        if self._workers > 1:
            self._pool = ThreadPoolExecutor(max_workers=self._workers, thread_name_prefix="rollout")

    @property
    def environment(self) -> GraspEnvironment:
        return self._environment

    def evaluate_one(self, genome: Genome) -> Evaluation:
        trajectory = self._environment.rollout(genome)
        descriptor = extract_descriptors(trajectory, self._environment.config.episode_length)
        return Evaluation(genome, trajectory, descriptor)

    def evaluate(self, genomes: Sequence[Genome]) -> list[Evaluation]:
        if self._pool is None or len(genomes) < 2:
            return [self.evaluate_one(g) for g in genomes]
        return list(self._pool.map(self.evaluate_one, genomes))

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None

    def __enter__(self) -> Evaluator:
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()
