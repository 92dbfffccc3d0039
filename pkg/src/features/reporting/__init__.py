"""
Feature Reporting.

Persistência dos artefatos de uma execução: repertórios (JSONL),
tabelas de métricas (CSV), traços de replay e quadros SVG.
"""

from src.features.reporting.metrics_writer import (
    read_metrics,
    write_final,
    write_metrics,
    write_runs,
    write_summary,
)
from src.features.reporting.repertoire_repository import (
    Repertoire,
    RepertoireRepository,
    load_repertoire,
    read_repertoire,
    require_environment,
    write_repertoire,
)
from src.features.reporting.replay import Replay, replay_trace, write_trace
from src.features.reporting.svg_renderer import render_frames, render_repertoire

__all__ = [
    "Repertoire",
    "RepertoireRepository",
    "Replay",
    "load_repertoire",
    "read_metrics",
    "read_repertoire",
    "render_frames",
    "render_repertoire",
    "replay_trace",
    "require_environment",
    "write_final",
    "write_metrics",
    "write_repertoire",
    "write_runs",
    "write_summary",
    "write_trace",
]
