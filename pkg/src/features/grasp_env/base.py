"""
Environment interface and factory.

Backends are created through the DI container so tests and other
simulators can swap the planar environment out.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

from src.core.container import container
from src.core.exceptions import ServiceError
from src.models.genome import Genome
from src.models.run_config import EnvConfig
from src.models.trajectory import Trajectory


class GraspEnvironment(ABC):
    """
    Deterministic episode simulator.

    ``rollout`` must be a pure function of the genome and the
    configuration so it can run on any worker thread.
    """

    def __init__(self, config: EnvConfig) -> None:
        self._config = config

    @property
    def config(self) -> EnvConfig:
        return self._config

    @property
    def env_hash(self) -> str:
        return self._config.env_hash()

    @abstractmethod
    def rollout(self, genome: Genome) -> Trajectory:
        """Simulate one episode."""


def create_environment(config: EnvConfig) -> GraspEnvironment:
    """
    Build the backend named by ``config.backend``.

    Raises:
        ServiceError: If the backend is unknown
    """
    if config.backend == "planar":
        from src.features.grasp_env.environment import PlanarGraspEnv

        return PlanarGraspEnv(config)
    raise ServiceError(f"Unknown environment backend '{config.backend}'", service_name="GraspEnvironment")


def resolve_environment(config: EnvConfig) -> GraspEnvironment:
    """Environment from the container's factory, or the built-in one."""
    return container.resolve_or_default(GraspEnvironment, create_environment, config=config)
