"""Modelos de registro do motor evolutivo."""

from src.features.engine.models.records import METRIC_COLUMNS, GenerationLog, RunSummary

__all__ = ["METRIC_COLUMNS", "GenerationLog", "RunSummary"]
