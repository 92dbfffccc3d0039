"""
Feature Grasp Env: ambiente de preensão planar.

Um braço serial planar com garra paralela tenta levantar um objeto
(círculo ou caixa) apoiado na mesa. O rollout é determinístico.
"""

from src.features.grasp_env.base import GraspEnvironment, create_environment, resolve_environment
from src.features.grasp_env.contact import antipodal_check, push_resolve
from src.features.grasp_env.environment import PlanarGraspEnv
from src.features.grasp_env.kinematics import decode_genome, forward_kinematics, interpolate

__all__ = [
    "GraspEnvironment",
    "PlanarGraspEnv",
    "antipodal_check",
    "create_environment",
    "decode_genome",
    "forward_kinematics",
    "interpolate",
    "push_resolve",
    "resolve_environment",
]
