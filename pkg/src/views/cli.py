"""
Command-line interface.

Subcommands:
    run       one (strategy, seed) run
    batch     every (strategy, seed) pair plus cross-seed summaries
    replay    re-run one repertoire entry with a per-step trace
    metrics   recompute AC/GC of a repertoire by replaying it

Every command prints one ``key=value`` summary line on standard
output; logs go to standard error and to ``run.log``.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import defaultdict
from pathlib import Path
from typing import Any, Callable, Sequence

from src.core.container import container
from src.core.exceptions import (
    AppException,
    ConfigurationError,
    DataIntegrityError,
    IncompatibleArtifactError,
    RepositoryError,
)
from src.core.types import ExitCode, Strategy
from src.features.engine.controller import EvolutionEngine
from src.features.engine.evaluation import Evaluator
from src.features.engine.models import GenerationLog, RunSummary
from src.features.grasp_env.base import resolve_environment
from src.features.metrics.aggregate import aggregate_runs, summarize_finals
from src.features.metrics.coverage import CoverageGrid, SurfaceDiscretization, mark_success
from src.features.reporting.metrics_writer import write_final, write_metrics, write_runs, write_summary
from src.features.reporting.repertoire_repository import load_repertoire, require_environment, write_repertoire
from src.features.reporting.replay import replay_trace
from src.features.reporting.svg_renderer import REPERTOIRE_SAMPLE, render_repertoire
from src.models.run_config import RunConfig
from src.services.config_service import ConfigService
from src.services.logger_service import LoggerService
from src.utils.helpers import ensure_dir_exists, format_summary_line
from src.utils.rng import Stream, make_rng

REPERTOIRE_FILE = "repertoire.jsonl"
METRICS_FILE = "metrics.csv"
CONFIG_FILE = "config.json"
LOG_FILE = "run.log"
DEFAULT_SEEDS = (1, 2, 3, 4, 5)


def exit_code_for(error: BaseException) -> ExitCode:
    """Process exit code of an error."""
    if isinstance(error, ConfigurationError):
        return ExitCode.CONFIG_ERROR
    if isinstance(error, IncompatibleArtifactError):
        return ExitCode.INCOMPATIBLE_ARTIFACT
    if isinstance(error, (RepositoryError, OSError)):
        return ExitCode.IO_ERROR
    if isinstance(error, DataIntegrityError):
        return ExitCode.VERIFICATION_FAILED
    return ExitCode.RUN_FAILED


def report_error(error: BaseException) -> None:
    """Error message (and validation report) on standard error."""
    print(f"error: {error}", file=sys.stderr)
    for violation in getattr(error, "violations", ()):
        print(f"  - {violation}", file=sys.stderr)


def _services() -> tuple[ConfigService, LoggerService]:
    config = container.resolve_or_default(ConfigService, ConfigService)
    logger = container.resolve_or_default(LoggerService, LoggerService)
    return config, logger


def _load_settings(args: argparse.Namespace) -> tuple[ConfigService, LoggerService]:
    """Load ``--config`` on top of the defaults and apply the logging section."""
    config, logger = _services()
    config.load(args.config)
    logger.configure(
        level=config.get("logging.level", "INFO"),
        console_enabled=config.get("logging.console_enabled", True),
    )
    return config, logger


def _overrides(args: argparse.Namespace, **extra: Any) -> dict[str, Any]:
    overrides = {"budget": args.budget, "workers": args.workers}
    overrides.update(extra)
    return overrides


def write_run_artifacts(out_dir: Path, result, cfg: RunConfig, snapshot: dict[str, Any]) -> None:
    """Repertoire, metrics and effective configuration of a finished run."""
    ensure_dir_exists(out_dir)
    config_hash = cfg.config_hash()
    write_repertoire(result.archive, out_dir / REPERTOIRE_FILE, cfg.env, config_hash)
    write_metrics(result.logs, out_dir / METRICS_FILE, config_hash, cfg.env.env_hash())
    try:
        with open(out_dir / CONFIG_FILE, "w", encoding="utf-8") as f:
            json.dump(snapshot, f, indent=2, sort_keys=True, ensure_ascii=False)
            f.write("\n")
    except OSError as e:
        raise RepositoryError(f"Failed to write {out_dir / CONFIG_FILE}: {e}", path=str(out_dir / CONFIG_FILE))


def _run_one(
    config: ConfigService,
    logger: LoggerService,
    overrides: dict[str, Any],
    out_dir: Path,
) -> tuple[RunSummary, list[GenerationLog]]:
    cfg = config.build_run_config(overrides)
    ensure_dir_exists(out_dir)
    logger.attach_file(out_dir / LOG_FILE)
    try:
        result = EvolutionEngine(cfg).run()
        write_run_artifacts(out_dir, result, cfg, config.snapshot(overrides))
    finally:
        logger.detach_file()
    return result.summary, result.logs


def _summary_fields(summary: RunSummary) -> dict[str, Any]:
    first = summary.first_success_rollout
    return {
        "strategy": summary.strategy.value,
        "seed": summary.seed,
        "success": int(summary.success),
        "repertoire_size": summary.repertoire_size,
        "rollouts": summary.rollouts,
        "generations": summary.generations,
        "first_success_rollout": first if first is not None else "none",
        "approach_coverage": summary.approach_coverage,
        "grasp_coverage": summary.grasp_coverage,
        "config_hash": summary.config_hash,
    }


def cmd_run(args: argparse.Namespace) -> int:
    """Execute one run and write its artifacts to ``--out``."""
    config, logger = _load_settings(args)
    overrides = _overrides(args, strategy=args.strategy, seed=args.seed)
    summary, _ = _run_one(config, logger, overrides, Path(args.out))
    print(format_summary_line(command="run", **_summary_fields(summary), out=args.out))
    return ExitCode.OK


def cmd_batch(args: argparse.Namespace) -> int:
    """
    Run every (strategy, seed) pair, then aggregate.

    Pairs run one after the other; each owns ``<out>/<strategy>-seed<seed>``.
    A failing pair is reported and skipped.
    """
    config, logger = _load_settings(args)
    out = ensure_dir_exists(Path(args.out))
    strategies = [Strategy.parse(s) for s in dict.fromkeys(args.strategies)]
    seeds = list(dict.fromkeys(args.seeds))

    summaries: list[RunSummary] = []
    series: dict[Strategy, list[list[GenerationLog]]] = defaultdict(list)
    failed: list[str] = []
    for strategy in strategies:
        for seed in seeds:
            label = f"{strategy.value}-seed{seed}"
            try:
                summary, logs = _run_one(
                    config, logger, _overrides(args, strategy=strategy, seed=seed), out / label
                )
            except (AppException, OSError) as e:
                logger.error("%s failed: %s", label, e)
                report_error(e)
                failed.append(label)
                continue
            summaries.append(summary)
            series[strategy].append(logs)
            print(format_summary_line(command="batch-run", **_summary_fields(summary)))

    write_runs(summaries, out / "runs.csv")
    write_summary({s: aggregate_runs(runs) for s, runs in series.items()}, out / "summary.csv")
    write_final(summarize_finals(summaries), out / "final.csv")
    print(format_summary_line(
        command="batch",
        runs=len(summaries),
        failed=len(failed),
        strategies=",".join(s.value for s in strategies),
        seeds=",".join(str(s) for s in seeds),
        out=args.out,
    ))
    return ExitCode.RUN_FAILED if failed else ExitCode.OK


def _select_entry(archive, args: argparse.Namespace):
    if args.uid is not None:
        entry = archive.get_by_uid(args.uid)
        if entry is None:
            raise IndexError(f"No entry with uid {args.uid} in the repertoire")
        return entry
    if not 0 <= args.index < len(archive):
        raise IndexError(
            f"Index {args.index} out of range: the repertoire holds {len(archive)} entries"
            + (f" (valid: 0..{len(archive) - 1})" if len(archive) else "")
        )
    return archive[args.index]


def cmd_replay(args: argparse.Namespace) -> int:
    """Replay one entry; with ``--verify`` the stored success flag must be reproduced."""
    config, _ = _load_settings(args)
    repertoire = load_repertoire(Path(args.repertoire))
    env = repertoire.env
    if args.config is not None:
        env = config.build_run_config().env
        require_environment(repertoire, env, args.repertoire)
    try:
        entry = _select_entry(repertoire.archive, args)
    except IndexError as e:
        report_error(e)
        return ExitCode.USAGE

    out = Path(args.out) if args.out else Path(args.repertoire).parent / f"replay-{entry.uid}"
    svg_dir = out / "frames" if args.svg else None
    replay = replay_trace(entry.genome, env, out / "trace.csv", svg_dir, args.frame_stride)
    trajectory = replay.trajectory
    verified = trajectory.success == entry.success
    print(format_summary_line(
        command="replay",
        uid=entry.uid,
        success=int(trajectory.success),
        stored_success=int(entry.success),
        t_close=trajectory.t_close,
        t_touch=trajectory.t_touch if trajectory.t_touch is not None else "none",
        frames=len(replay.frames),
        trace=replay.trace_path,
    ))
    if args.verify and not verified:
        print(f"error: replayed success={trajectory.success} differs from stored success={entry.success}", file=sys.stderr)
        return ExitCode.VERIFICATION_FAILED
    return ExitCode.OK


def cmd_metrics(args: argparse.Namespace) -> int:
    """Recompute AC and GC of a repertoire by replaying every entry."""
    config, logger = _load_settings(args)
    repertoire = load_repertoire(Path(args.repertoire))
    cfg = config.build_run_config()
    env = repertoire.env
    if args.config is not None:
        env = cfg.env
        require_environment(repertoire, env, args.repertoire)

    grid = CoverageGrid.for_environment(env, cfg.metrics)
    surface = SurfaceDiscretization.for_environment(env, cfg.metrics)
    entries = list(repertoire.archive)
    with Evaluator(resolve_environment(env), cfg.workers) as evaluator:
        replays = evaluator.evaluate([entry.genome for entry in entries])
    successes = [replay.trajectory for replay in replays if replay.success]
    for trajectory in successes:
        mark_success(grid, surface, trajectory)
    if len(successes) != len(entries):
        logger.warning("%d of %d entries did not replay to success", len(entries) - len(successes), len(entries))

    out = Path(args.out) if args.out else Path(args.repertoire).parent / "coverage.csv"
    _write_coverage(out, len(entries), len(successes), grid.ratio, surface.ratio, repertoire.env_hash)

    drawn = 0
    if args.svg:
        drawn = render_repertoire(successes, env, Path(args.svg), args.sample, make_rng(args.seed, Stream.RENDER))
    print(format_summary_line(
        command="metrics",
        entries=len(entries),
        replayed_successes=len(successes),
        approach_coverage=grid.ratio,
        grasp_coverage=surface.ratio,
        drawn=drawn,
        out=out,
    ))
    return ExitCode.OK


def _write_coverage(path: Path, entries: int, successes: int, ac: float, gc: float, env_hash: str) -> None:
    try:
        ensure_dir_exists(path.parent)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write("entries,replayed_successes,approach_coverage,grasp_coverage,env_hash\n")
            f.write(f"{entries},{successes},{ac!r},{gc!r},{env_hash}\n")
    except OSError as e:
        raise RepositoryError(f"Failed to write {path}: {e}", path=str(path))


def build_parser() -> argparse.ArgumentParser:
    strategies = [s.value for s in Strategy]

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None, help="JSON file merged over the shipped defaults")

    run_opts = argparse.ArgumentParser(add_help=False)
    run_opts.add_argument("--budget", type=int, default=None, help="rollout budget override")
    run_opts.add_argument("--workers", type=int, default=None, help="rollout threads")

    parser = argparse.ArgumentParser(
        prog="grasp-repertoire",
        description="Quality-diversity search of open-loop grasping policies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", parents=[common, run_opts], help="one run")
    p.add_argument("--strategy", choices=strategies, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("batch", parents=[common, run_opts], help="multi-strategy, multi-seed batch")
    p.add_argument("--strategy", "--strategies", dest="strategies", nargs="+", choices=strategies, default=strategies)
    p.add_argument("--seed", "--seeds", dest="seeds", nargs="+", type=int, default=list(DEFAULT_SEEDS))
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=cmd_batch)

    p = sub.add_parser("replay", parents=[common], help="replay one repertoire entry")
    p.add_argument("repertoire", type=Path)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--index", type=int, default=0)
    group.add_argument("--uid", type=int, default=None)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--verify", action="store_true", help="fail if the replayed success flag differs")
    p.add_argument("--svg", action="store_true", help="also write SVG frames")
    p.add_argument("--frame-stride", type=int, default=10)
    p.set_defaults(handler=cmd_replay)

    p = sub.add_parser("metrics", parents=[common], help="recompute coverage of a repertoire")
    p.add_argument("repertoire", type=Path)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--svg", type=Path, default=None, help="write an overlay of sampled trajectories")
    p.add_argument("--sample", type=int, default=REPERTOIRE_SAMPLE)
    p.add_argument("--seed", type=int, default=1, help="seed of the SVG sample")
    p.set_defaults(handler=cmd_metrics)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """
    Parse arguments and dispatch.

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else ExitCode.USAGE
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return int(handler(args))
    except (AppException, OSError) as e:
        report_error(e)
        return int(exit_code_for(e))
