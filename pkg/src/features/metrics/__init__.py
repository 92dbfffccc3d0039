"""
Feature Metrics: cobertura de aproximação (AC), cobertura de preensão
(GC) e agregação entre sementes.
"""

from src.features.metrics.aggregate import aggregate_runs, summarize_finals
from src.features.metrics.coverage import (
    CoverageGrid,
    SurfaceDiscretization,
    approach_coverage,
    grasp_coverage,
)

__all__ = [
    "CoverageGrid",
    "SurfaceDiscretization",
    "aggregate_runs",
    "approach_coverage",
    "grasp_coverage",
    "summarize_finals",
]
