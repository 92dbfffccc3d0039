"""
Cross-seed aggregation with normal-approximation 0.95 confidence intervals.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.core.types import Strategy
from src.features.engine.models import GenerationLog, RunSummary

Z_95 = 1.96
SERIES_METRICS = ("successes_total", "archive_size", "approach_coverage", "grasp_coverage")
FINAL_METRICS = ("success", "repertoire_size", "approach_coverage", "grasp_coverage")


@dataclass(frozen=True)
class Estimate:
    """Mean over seeds and CI half-width (None with fewer than two seeds)."""

    mean: float
    ci: float | None
    n: int


def estimate(values: Sequence[float]) -> Estimate:
    data = np.asarray(values, dtype=float)
    if data.size == 0:
        return Estimate(math.nan, None, 0)
    if data.size < 2:
        return Estimate(float(data.mean()), None, int(data.size))
    half = Z_95 * float(np.std(data, ddof=1)) / math.sqrt(data.size)
    return Estimate(float(data.mean()), half, int(data.size))


@dataclass(frozen=True)
class Checkpoint:
    """Aggregated metrics at one cumulative-rollout count."""

    rollouts: int
    metrics: dict[str, Estimate]


def aggregate_runs(
    runs: Sequence[Sequence[GenerationLog]],
    metrics: Sequence[str] = SERIES_METRICS,
) -> list[Checkpoint]:
    """
    Align per-seed series on their rollout checkpoints.

    Each run contributes its latest value at or before a checkpoint;
    runs that have not reached their first record yet are left out.

    Args:
        runs: One GenerationLog series per seed
        metrics: Field names to aggregate

    Returns:
        One checkpoint per distinct cumulative rollout count, ascending
    """
    checkpoints = sorted({log.rollouts for series in runs for log in series})
    ordered = [sorted(series, key=lambda log: log.rollouts) for series in runs]
    out: list[Checkpoint] = []
    for rollouts in checkpoints:
        values: dict[str, list[float]] = defaultdict(list)
        for series in ordered:
            reached = [log for log in series if log.rollouts <= rollouts]
            if not reached:
                continue
            latest = reached[-1]
            for name in metrics:
                values[name].append(float(getattr(latest, name)))
        out.append(Checkpoint(rollouts, {name: estimate(values[name]) for name in metrics}))
    return out


def summarize_finals(summaries: Sequence[RunSummary]) -> dict[Strategy, dict[str, Estimate]]:
    """Final success rate, repertoire size and coverages per strategy."""
    grouped: dict[Strategy, list[RunSummary]] = defaultdict(list)
    for summary in summaries:
        grouped[summary.strategy].append(summary)
    return {
        strategy: {
            name: estimate([float(getattr(s, name)) for s in runs]) for name in FINAL_METRICS
        }
        for strategy, runs in grouped.items()
    }
