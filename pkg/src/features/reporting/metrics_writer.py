"""
Metric tables.

Per-generation series (``metrics.csv``), cross-seed checkpoints
(``summary.csv``) and per-strategy final values (``final.csv``).
Floats are written with ``repr`` so re-parsing is exact.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Any, Iterable, Sequence

from src.core.exceptions import RepositoryError
from src.core.types import Strategy
from src.features.engine.models import METRIC_COLUMNS, GenerationLog, RunSummary
from src.features.metrics.aggregate import FINAL_METRICS, SERIES_METRICS, Checkpoint, Estimate

RUN_COLUMNS = (
    "strategy",
    "seed",
    "success",
    "repertoire_size",
    "rollouts",
    "generations",
    "first_success_rollout",
    "approach_coverage",
    "grasp_coverage",
    "impatience_generations",
    "regeneration_generations",
    "config_hash",
    "env_hash",
)

_INT_COLUMNS = {"generation", "rollouts", "successes_total", "archive_size"}


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Strategy):
        return value.value
    if isinstance(value, (tuple, list)):
        return " ".join(str(v) for v in value)
    return str(value)


def _write_rows(path: Path, columns: Sequence[str], rows: Iterable[Sequence[Any]], comment: str | None = None) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            if comment:
                f.write(f"# {comment}\n")
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_cell(v) for v in row])
    except OSError as e:
        raise RepositoryError(f"Failed to write {path}: {e}", path=str(path))


def write_metrics(
    logs: Sequence[GenerationLog],
    path: Path,
    config_hash: str | None = None,
    env_hash: str | None = None,
) -> None:
    """
    One row per generation under the metric column header.

    When hashes are given, a leading ``#`` comment line records them.
    """
    comment = None
    if config_hash or env_hash:
        comment = f"config_hash={config_hash or ''} env_hash={env_hash or ''}"
    _write_rows(Path(path), METRIC_COLUMNS, ([log.row()[c] for c in METRIC_COLUMNS] for log in logs), comment)


def read_metrics(path: Path) -> list[GenerationLog]:
    """
    Parse a metrics file back into generation records.

    ``new_successes`` is not stored; it is rebuilt from consecutive
    ``successes_total`` values.

    Raises:
        RepositoryError: On a missing column or a malformed row
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            lines = [line for line in f if not line.startswith("#")]
    except OSError as e:
        raise RepositoryError(f"Failed to read {path}: {e}", path=str(path))

    reader = csv.DictReader(lines)
    missing = set(METRIC_COLUMNS) - set(reader.fieldnames or ())
    if missing:
        raise RepositoryError(f"{path}: missing columns {sorted(missing)}", path=str(path), line_number=1)

    logs: list[GenerationLog] = []
    previous = 0
    for number, row in enumerate(reader, start=2):
        try:
            values = {c: int(row[c]) if c in _INT_COLUMNS else float(row[c]) for c in METRIC_COLUMNS}
        except (TypeError, ValueError) as e:
            raise RepositoryError(f"{path}:{number}: malformed row ({e})", path=str(path), line_number=number)
        logs.append(GenerationLog(new_successes=values["successes_total"] - previous, **values))
        previous = values["successes_total"]
    return logs


def write_runs(summaries: Sequence[RunSummary], path: Path) -> None:
    """One row per (strategy, seed) run."""
    _write_rows(Path(path), RUN_COLUMNS, ([getattr(s, c) for c in RUN_COLUMNS] for s in summaries))


def _estimate_cells(estimate: Estimate) -> list[Any]:
    mean = None if math.isnan(estimate.mean) else estimate.mean
    return [mean, estimate.ci, estimate.n]


def write_summary(series: dict[Strategy, list[Checkpoint]], path: Path) -> None:
    """Aggregated series: one row per (strategy, rollout checkpoint)."""
    columns = ["strategy", "rollouts"]
    for name in SERIES_METRICS:
        columns += [f"{name}_mean", f"{name}_ci", f"{name}_n"]
    rows = []
    for strategy in sorted(series, key=lambda s: s.value):
        for checkpoint in series[strategy]:
            row: list[Any] = [strategy, checkpoint.rollouts]
            for name in SERIES_METRICS:
                row += _estimate_cells(checkpoint.metrics[name])
            rows.append(row)
    _write_rows(Path(path), columns, rows)


def write_final(finals: dict[Strategy, dict[str, Estimate]], path: Path) -> None:
    """Final success rate, repertoire size and coverages per strategy."""
    columns = ["strategy"]
    for name in FINAL_METRICS:
        columns += [f"{name}_mean", f"{name}_ci", f"{name}_n"]
    rows = []
    for strategy in sorted(finals, key=lambda s: s.value):
        row: list[Any] = [strategy]
        for name in FINAL_METRICS:
            row += _estimate_cells(finals[strategy][name])
        rows.append(row)
    _write_rows(Path(path), columns, rows)
