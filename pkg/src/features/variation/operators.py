"""
Initialization and mutation operators.

Genes are grouped into approach (waypoint 1) and prehension
(waypoints 2, 3 and the closure gene). Explore shakes the approach
group with ``sigma_big`` and the prehension group with
``sigma_small``; refine swaps the two scales. Mutated genes are
clamped into [-1, 1].
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from src.core.types import MutationKind
from src.models.genome import GENE_MAX, GENE_MIN, Genome, genome_length
from src.models.run_config import MutationParams
from src.utils.rng import as_seed_sequence, element_rng


def approach_mask(n_joints: int) -> np.ndarray:
    """True for the genes of the first waypoint."""
    mask = np.zeros(genome_length(n_joints), dtype=bool)
    mask[:n_joints] = True
    return mask


def _perturb(genome: Genome, sigma: np.ndarray | float, rng: np.random.Generator) -> Genome:
    genes = genome.array
    noise = rng.normal(0.0, 1.0, size=genes.shape) * sigma
    return Genome.from_array(np.clip(genes + noise, GENE_MIN, GENE_MAX))


def init_pop(mu: int, n_joints: int, rng: np.random.Generator) -> list[Genome]:
    """``mu`` genomes with i.i.d. uniform genes on [-1, 1]."""
    genes = rng.uniform(GENE_MIN, GENE_MAX, size=(mu, genome_length(n_joints)))
    return [Genome.from_array(row) for row in genes]


def mutate_explore(genome: Genome, params: MutationParams, rng: np.random.Generator) -> Genome:
    """Large steps on the approach waypoint, small steps elsewhere."""
    sigma = np.where(approach_mask(genome.n_joints), params.sigma_big, params.sigma_small)
    return _perturb(genome, sigma, rng)


def mutate_refine(genome: Genome, params: MutationParams, rng: np.random.Generator) -> Genome:
    """Small steps on the approach waypoint, large steps on prehension genes."""
    sigma = np.where(approach_mask(genome.n_joints), params.sigma_small, params.sigma_big)
    return _perturb(genome, sigma, rng)


def mutate_uniform(genome: Genome, sigma: float, rng: np.random.Generator) -> Genome:
    """Same Gaussian scale on every gene."""
    return _perturb(genome, float(sigma), rng)


def mutate_er(
    batch: Sequence[Genome],
    p_e: float,
    p_r: float,
    params: MutationParams,
    rng: np.random.SeedSequence | np.random.Generator | int,
    hints: Sequence[MutationKind | None] | None = None,
) -> list[tuple[Genome, MutationKind]]:
    """
    Explore with probability ``p_e``, refine otherwise.

    Element ``i`` draws from its own sub-stream of ``rng``, so the
    result of one element does not depend on the others. A hint
    forces the operator for its element.

    Returns:
        (mutated genome, applied kind) per input genome, in order
    """
    parent = as_seed_sequence(rng)
    out: list[tuple[Genome, MutationKind]] = []
    for index, genome in enumerate(batch):
        stream = element_rng(parent, index)
        coin = stream.random()
        hint = hints[index] if hints is not None else None
        if hint in (MutationKind.EXPLORE, MutationKind.REFINE):
            kind = hint
        else:
            kind = MutationKind.EXPLORE if coin < p_e else MutationKind.REFINE
        if kind is MutationKind.EXPLORE:
            out.append((mutate_explore(genome, params, stream), kind))
        else:
            out.append((mutate_refine(genome, params, stream), kind))
    return out


def mutate_uniform_batch(
    batch: Sequence[Genome],
    sigma: float,
    rng: np.random.SeedSequence | np.random.Generator | int,
) -> list[tuple[Genome, MutationKind]]:
    """Uniform mutation of a batch, one sub-stream per element."""
    parent = as_seed_sequence(rng)
    return [
        (mutate_uniform(genome, sigma, element_rng(parent, index)), MutationKind.UNIFORM)
        for index, genome in enumerate(batch)
    ]
