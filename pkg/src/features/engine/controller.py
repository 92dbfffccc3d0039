"""
Evolution engine.

Drives E2R and the three baselines through one generational loop.
All state changes happen on the calling thread, in offspring order;
only rollouts run on the evaluator's workers.
"""

from __future__ import annotations

import time
from typing import NamedTuple, Sequence

from PySide6.QtCore import QObject

from src.core.base_controller import BaseController
from src.core.exceptions import ConfigurationError, DataIntegrityError, ValidationError
from src.core.signals import event_bus
from src.core.types import MutationKind, Strategy
from src.features.engine.evaluation import Evaluation, Evaluator
from src.features.engine.models import GenerationLog, RunSummary
from src.features.engine.schedule import get_successes, is_impatience_gen, is_regenerate_gen
from src.features.grasp_env.base import GraspEnvironment, resolve_environment
from src.features.metrics.coverage import CoverageGrid, SurfaceDiscretization, mark_success
from src.features.novelty.evaluator import ReferenceSet, update_novelty
from src.features.registry import MutationScheme, SelectionScheme, get_profile
from src.features.selection.operators import (
    multi_bc_sel,
    ns_select,
    random_sample,
    random_select,
    regenerate_select,
)
from src.features.variation.operators import init_pop, mutate_er, mutate_uniform_batch
from src.models.archives import NoveltyArchive, SuccessArchive
from src.models.individual import Individual, Lineage
from src.models.run_config import RunConfig, validate_config
from src.utils.rng import Stream, make_rng, seed_sequence


class RunResult(NamedTuple):
    """Everything a finished run produced."""

    archive: SuccessArchive
    logs: list[GenerationLog]
    summary: RunSummary


class EvolutionEngine(BaseController):
    """
    One run of one strategy.

    Usage:
        engine = EvolutionEngine(run_config)
        result = engine.run()

    Raises:
        ConfigurationError: If the configuration is invalid (before any rollout)
    """

    def __init__(
        self,
        cfg: RunConfig,
        environment: GraspEnvironment | None = None,
        parent: QObject | None = None,
    ) -> None:
        super().__init__(parent)
        report = validate_config(cfg)
        if report:
            raise ConfigurationError(
                "Invalid run configuration: " + "; ".join(report.violations),
                violations=list(report.violations),
            )
        self._cfg = cfg
        self._profile = get_profile(cfg.strategy)
        self._environment = environment or resolve_environment(cfg.env)
        self._label = f"{cfg.strategy.value}-seed{cfg.seed}"
        self._config_hash = cfg.config_hash()
        self._env_hash = self._environment.env_hash

        self.population: list[Individual] = []
        self.novelty_archive = NoveltyArchive()
        self.success_archive = SuccessArchive()
        self.logs: list[GenerationLog] = []
        self.generation = 0
        self.rollouts = 0
        self.impatience_generations: list[int] = []
        self.regeneration_generations: list[int] = []
        self.first_success_rollout: int | None = None
        self._next_uid = 0
        self._grid = CoverageGrid.for_environment(cfg.env, cfg.metrics)
        self._surface = SurfaceDiscretization.for_environment(cfg.env, cfg.metrics)
        self._evaluator: Evaluator | None = None

    @property
    def label(self) -> str:
        return self._label

    @property
    def approach_coverage(self) -> float:
        return self._grid.ratio

    @property
    def grasp_coverage(self) -> float:
        return self._surface.ratio

    # -- building blocks -------------------------------------------------

    def _individuals(
        self,
        evaluations: Sequence[Evaluation],
        lineages: Sequence[Lineage],
    ) -> list[Individual]:
        """Wrap evaluations into individuals with fresh uids."""
        out = []
        for evaluation, lineage in zip(evaluations, lineages):
            out.append(Individual(
                uid=self._next_uid,
                genome=evaluation.genome,
                descriptor=evaluation.descriptor,
                success=evaluation.success,
                lineage=lineage,
                touch_point=evaluation.trajectory.touch_point,
            ))
            self._next_uid += 1
        return out

    def _harvest(self, individuals: Sequence[Individual], evaluations: Sequence[Evaluation]) -> int:
        """Move successes into the success archive and the coverages."""
        trajectories = {ind.uid: ev.trajectory for ind, ev in zip(individuals, evaluations)}
        successes = get_successes(individuals)
        for individual in successes:
            self.success_archive.add(individual)
            mark_success(self._grid, self._surface, trajectories[individual.uid])
        if successes and self.first_success_rollout is None:
            self.first_success_rollout = self.rollouts
        return len(successes)

    def _fresh_population(self, generation: int) -> list[Evaluation]:
        rng = make_rng(self._cfg.seed, Stream.INIT, generation)
        genomes = init_pop(self._cfg.mu, self._cfg.env.n_joints, rng)
        evaluations = self._evaluator.evaluate(genomes)
        self.rollouts += len(genomes)
        lineages = [Lineage(generation, MutationKind.INIT)] * len(genomes)
        population = self._individuals(evaluations, lineages)
        refs = ReferenceSet.from_sources(population, self.novelty_archive)
        self.population = update_novelty(population, refs, self._cfg.k)
        self._harvest(self.population, evaluations)
        return evaluations

    def initialize(self) -> None:
        """Sample and evaluate the initial population."""
        if self._evaluator is None:
            self._evaluator = Evaluator(self._environment, self._cfg.workers)
        self._fresh_population(0)
        self.logger.debug("%s: initial population of %d evaluated", self._label, len(self.population))

    def _impatience(self, generation: int) -> None:
        """Restart from a new random population while nothing succeeded."""
        if self._cfg.impatience_clears_archive:
            self.novelty_archive.reset()
        self._fresh_population(generation)
        self.impatience_generations.append(generation)
        event_bus.impatience_triggered.emit(self._label, generation)

    def _regenerate(self, generation: int) -> None:
        """Refill the population with the most novel successes."""
        entries = list(self.success_archive)
        refs = ReferenceSet.from_sources(self.population + entries, self.novelty_archive)
        refreshed = update_novelty(entries, refs, self._cfg.k)
        self.success_archive.replace_all(refreshed)

        chosen = regenerate_select(refreshed, self._cfg.mu)
        injected = len(chosen)
        if len(chosen) < self._cfg.mu:
            used = {ind.uid for ind in chosen}
            candidates = [ind for ind in self.population if ind.uid not in used]
            chosen += multi_bc_sel(candidates, min(self._cfg.mu - len(chosen), len(candidates)))
        self.population = chosen
        self.regeneration_generations.append(generation)
        event_bus.regeneration_triggered.emit(self._label, generation, injected)

    def _mutate(self, parents: Sequence[Individual], generation: int):
        genomes = [p.genome for p in parents]
        stream = seed_sequence(self._cfg.seed, Stream.MUTATE, generation)
        if self._profile.mutation is MutationScheme.EXPLORE_REFINE:
            return mutate_er(
                genomes, self._cfg.p_e, self._cfg.p_r, self._cfg.mutation, stream,
                hints=[p.hint for p in parents],
            )
        return mutate_uniform_batch(genomes, self._cfg.mutation.sigma_uniform, stream)

    def _select(self, pool: list[Individual], generation: int) -> list[Individual]:
        scheme = self._profile.selection
        if scheme is SelectionScheme.MULTI_BC:
            return multi_bc_sel(pool, self._cfg.mu)
        if scheme is SelectionScheme.NOVELTY:
            return ns_select(pool, self._cfg.mu, self._cfg.k, self.novelty_archive)
        return random_select(pool, self._cfg.mu, make_rng(self._cfg.seed, Stream.SELECT, generation))

    # -- loop ------------------------------------------------------------

    def step(self) -> GenerationLog:
        """Run one offspring generation."""
        cfg = self._cfg
        generation = self.generation + 1
        started = time.perf_counter()
        before = len(self.success_archive)

        if self._profile.impatience and not len(self.success_archive) and is_impatience_gen(generation, cfg.g_i):
            self._impatience(generation)
        if self._profile.regeneration and len(self.success_archive) and is_regenerate_gen(generation, cfg.g_r):
            self._regenerate(generation)

        parents = random_sample(self.population, cfg.lambda_, make_rng(cfg.seed, Stream.SAMPLE, generation))
        mutated = self._mutate(parents, generation)
        sampled = {p.uid for p in parents if p.hint is not None}
        if sampled:
            self.population = [ind.with_hint(None) if ind.uid in sampled else ind for ind in self.population]

        evaluations = self._evaluator.evaluate([genome for genome, _ in mutated])
        self.rollouts += len(evaluations)
        lineages = [Lineage(generation, kind, parent.uid) for (_, kind), parent in zip(mutated, parents)]
        offspring = self._individuals(evaluations, lineages)

        pool = self.population + offspring
        refs = ReferenceSet.from_sources(pool, self.novelty_archive)
        pool = update_novelty(pool, refs, cfg.k)
        scored_offspring = pool[len(self.population):]
        self._harvest(scored_offspring, evaluations)

        picks = make_rng(cfg.seed, Stream.ARCHIVE, generation).choice(len(scored_offspring), size=cfg.n_a, replace=False)
        self.novelty_archive.extend(scored_offspring[i] for i in picks)

        self.population = self._select(pool, generation)
        self.generation = generation

        elapsed = time.perf_counter() - started
        log = GenerationLog(
            generation=generation,
            rollouts=self.rollouts,
            successes_total=len(self.success_archive),
            archive_size=len(self.novelty_archive),
            new_successes=len(self.success_archive) - before,
            approach_coverage=self.approach_coverage,
            grasp_coverage=self.grasp_coverage,
            wall_time_s=elapsed if cfg.record_wall_time else 0.0,
        )
        self.logs.append(log)
        event_bus.generation_completed.emit(log)
        return log

    def inject_success(self, individual: Individual) -> None:
        """
        Add an externally built success to the success archive.

        Raises:
            ValidationError: If the individual is not marked successful
        """
        if not individual.success:
            raise ValidationError("Only successful individuals can be injected", field="success")
        self.success_archive.add(individual)
        if self.first_success_rollout is None:
            self.first_success_rollout = self.rollouts

    def audit(self) -> None:
        """
        Replay every success through the environment.

        Raises:
            DataIntegrityError: If an entry no longer succeeds
        """
        entries = list(self.success_archive)
        replays = self._evaluator.evaluate([entry.genome for entry in entries])
        failed = [entry.uid for entry, replay in zip(entries, replays) if not replay.success]
        if failed:
            raise DataIntegrityError(
                f"{len(failed)} success-archive entries do not replay to success",
                details={"uids": failed},
            )
        self.logger.debug("%s: audit of %d successes passed", self._label, len(entries))

    def summary(self, wall_time: float = 0.0) -> RunSummary:
        return RunSummary(
            strategy=self._cfg.strategy,
            seed=self._cfg.seed,
            config_hash=self._config_hash,
            env_hash=self._env_hash,
            success=len(self.success_archive) > 0,
            repertoire_size=len(self.success_archive),
            rollouts=self.rollouts,
            generations=self.generation,
            first_success_rollout=self.first_success_rollout,
            approach_coverage=self.approach_coverage,
            grasp_coverage=self.grasp_coverage,
            impatience_generations=tuple(self.impatience_generations),
            regeneration_generations=tuple(self.regeneration_generations),
            wall_time_s=wall_time if self._cfg.record_wall_time else 0.0,
        )

    def run(self) -> RunResult:
        """
        Evaluate the initial population, then iterate until the rollout budget is spent.

        Returns:
            Success archive, generation logs and run summary
        """
        started = time.perf_counter()
        self.set_running(True)
        event_bus.run_started.emit(self._label, {
            "strategy": self._cfg.strategy.value,
            "seed": self._cfg.seed,
            "budget": self._cfg.budget,
            "config_hash": self._config_hash,
        })
        self.logger.info(
            "%s: starting (budget=%d rollouts, mu=%d, lambda=%d, workers=%d)",
            self._label, self._cfg.budget, self._cfg.mu, self._cfg.lambda_, self._cfg.workers,
        )
        try:
            self.initialize()
            self.report_progress(self.rollouts, self._cfg.budget)
            while self.rollouts < self._cfg.budget:
                self.step()
                self.report_progress(self.rollouts, self._cfg.budget)
            if self._cfg.audit_success_archive:
                self.audit()
        except Exception as e:
            self.handle_error(e, self._label)
            raise
        finally:
            if self._evaluator is not None:
                self._evaluator.close()
                self._evaluator = None
            self.set_running(False)

        wall_time = time.perf_counter() - started
        summary = self.summary(wall_time)
        self.logger.info(
            "%s: finished in %.2fs, %d generations, %d rollouts, %d successes, AC=%.4f GC=%.4f",
            self._label, wall_time, self.generation, self.rollouts,
            summary.repertoire_size, summary.approach_coverage, summary.grasp_coverage,
        )
        event_bus.run_finished.emit(self._label, summary)
        return RunResult(self.success_archive, list(self.logs), summary)


def run(
    cfg: RunConfig,
    strategy: Strategy | str | None = None,
    environment: GraspEnvironment | None = None) -> RunResult:
    """
    Execute one run.

    Args:
        cfg: Run configuration
        strategy: Optional strategy overriding ``cfg.strategy``
        environment: Optional environment (defaults to the configured backend)
    """
    if strategy is not None:
        cfg = cfg.copy(strategy=Strategy.parse(strategy))
    return EvolutionEngine(cfg, environment).run()
