"""
Parent sampling and survivor selection.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from src.core.exceptions import ContractViolation
from src.core.types import MutationKind, Slot
from src.features.novelty.evaluator import knn_scores
from src.models.archives import NoveltyArchive
from src.models.descriptor import BehaviorDescriptor
from src.models.individual import Individual

# Planar layout: b1 (x, y), b2 (x, y), b3, b4 (x, y), b5.
CONCAT_LAYOUT: tuple[tuple[Slot, int], ...] = (
    (Slot.OBJECT_FINAL, 2),
    (Slot.TOUCH_POSITION, 2),
    (Slot.TOUCH_ORIENTATION, 1),
    (Slot.MID_POSITION, 2),
    (Slot.MID_ORIENTATION, 1),
)
CONCAT_SIZE = sum(width for _, width in CONCAT_LAYOUT)


def _require_size(pool: Sequence[Individual], n: int) -> None:
    if n > len(pool):
        raise ContractViolation(
            f"Cannot take {n} individuals from a pool of {len(pool)}",
            details={"requested": n, "available": len(pool)},
        )


def random_sample(pop: Sequence[Individual], n: int, rng: np.random.Generator) -> list[Individual]:
    """``n`` individuals drawn uniformly without replacement."""
    _require_size(pop, n)
    return [pop[i] for i in rng.choice(len(pop), size=n, replace=False)]


def random_select(pool: Sequence[Individual], mu: int, rng: np.random.Generator) -> list[Individual]:
    """Survivors picked uniformly at random."""
    return random_sample(pool, mu, rng)


def novelty_matrix(pool: Sequence[Individual]) -> np.ndarray:
    """(n, 5) per-slot novelty, NaN where unset."""
    return np.array(
        [[np.nan if s is None else s for s in individual.novelty] for individual in pool],
        dtype=float,
    ).reshape(len(pool), len(Slot))


def multi_bc_sel(pool: Sequence[Individual], mu: int) -> list[Individual]:
    """
    Round-robin survivor selection over the five slots.

    Each turn takes the most novel not-yet-selected individual on
    the current slot (earlier pool index on ties); slots without a
    scored candidate are skipped. Individuals with no score at all
    fill any remaining places in pool order.
    """
    _require_size(pool, mu)
    scores = novelty_matrix(pool)
    scores = np.where(np.isnan(scores), -np.inf, scores)
    taken = np.zeros(len(pool), dtype=bool)
    chosen: list[int] = []
    while len(chosen) < mu:
        progressed = False
        for slot in Slot:
            if len(chosen) == mu:
                break
            column = np.where(taken, -np.inf, scores[:, slot.index])
            best = int(np.argmax(column))
            if column[best] == -np.inf:
                continue
            taken[best] = True
            chosen.append(best)
            progressed = True
        if not progressed:
            break
    chosen.extend(int(i) for i in np.flatnonzero(~taken)[: mu - len(chosen)])
    return [pool[i] for i in chosen]


def concatenated_descriptor(descriptor: BehaviorDescriptor) -> np.ndarray:
    """All slots in one vector; ineligible components are zero."""
    parts = []
    for slot, width in CONCAT_LAYOUT:
        parts.append(descriptor.value(slot) if descriptor.is_eligible(slot) else np.zeros(width))
    return np.concatenate(parts)


def ns_select(
    pool: Sequence[Individual],
    mu: int,
    k: int,
    archive: NoveltyArchive | None = None,
) -> list[Individual]:
    """
    Single-descriptor novelty selection.

    Novelty of the concatenated descriptor against pool ∪ archive;
    top ``mu`` kept, earlier pool index first on ties.
    """
    _require_size(pool, mu)
    if not pool:
        return []
    queries = np.vstack([concatenated_descriptor(ind.descriptor) for ind in pool])
    owners = [ind.uid for ind in pool]
    refs = [queries]
    for entry in archive or ():
        refs.append(concatenated_descriptor(entry.descriptor)[None, :])
        owners.append(entry.uid)
    uids = [ind.uid for ind in pool]
    scores = np.nan_to_num(knn_scores(queries, np.vstack(refs), k, uids, owners), nan=0.0)
    order = sorted(range(len(pool)), key=lambda i: (-scores[i], i))
    return [pool[i] for i in order[:mu]]


def group_scores(entries: Sequence[Individual]) -> tuple[np.ndarray, np.ndarray]:
    """
    Approach and prehension novelty of archive entries.

    Each slot is divided by its maximum over the entries, then the
    scored slots of a group are averaged (4, 5 for approach; 2, 3 for
    prehension). Entries with no scored slot in a group get -inf.
    """
    scores = novelty_matrix(entries)
    peak = np.max(np.where(np.isnan(scores), -np.inf, scores), axis=0)
    scale = np.where(peak > 0, peak, 1.0)
    normalized = scores / scale

    def mean_of(slots: tuple[Slot, ...]) -> np.ndarray:
        block = normalized[:, [s.index for s in slots]]
        valid = ~np.isnan(block)
        counts = valid.sum(axis=1)
        totals = np.where(valid, block, 0.0).sum(axis=1)
        return np.where(counts > 0, totals / np.maximum(counts, 1), -np.inf)

    return (
        mean_of((Slot.MID_POSITION, Slot.MID_ORIENTATION)),
        mean_of((Slot.TOUCH_POSITION, Slot.TOUCH_ORIENTATION)),
    )


def regeneration_size(archive_size: int, mu: int) -> int:
    """Individuals per group: floor(min(mu, |a_s|) / 2)."""
    return min(mu, archive_size) // 2


def regenerate_select(archive: Sequence[Individual], mu: int) -> list[Individual]:
    """
    Most novel successes, half for exploring and half for refining.

    Returns the approach group (hinted ``explore``) followed by the
    prehension group (hinted ``refine``); the groups are disjoint.
    """
    entries = list(archive)
    n_r = regeneration_size(len(entries), mu)
    if n_r == 0:
        return []
    approach, prehension = group_scores(entries)
    by_approach = sorted(range(len(entries)), key=lambda i: (-approach[i], i))[:n_r]
    used = set(by_approach)
    remaining = [i for i in range(len(entries)) if i not in used]
    by_prehension = sorted(remaining, key=lambda i: (-prehension[i], i))[:n_r]
    return [entries[i].with_hint(MutationKind.EXPLORE) for i in by_approach] + [
        entries[i].with_hint(MutationKind.REFINE) for i in by_prehension
    ]
