"""
Feature Engine: laço evolutivo de E2R e das estratégias de comparação.
"""

from src.features.engine.controller import EvolutionEngine, RunResult, run
from src.features.engine.models import GenerationLog, RunSummary

__all__ = ["EvolutionEngine", "GenerationLog", "RunResult", "RunSummary", "run"]
