"""
k-nearest-neighbor novelty.

Exact k-NN per descriptor slot on a ``cKDTree``; orientation slots use
a periodic tree of period 2π. A reference that belongs to the scored
individual (same owner uid) is never its own neighbor.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from src.core.exceptions import ContractViolation
from src.core.types import Slot
from src.models.archives import NoveltyArchive
from src.models.descriptor import BehaviorDescriptor
from src.models.individual import Individual

TWO_PI = 2.0 * math.pi


def angular_gap(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Shortest arc between angles: min(|Δ|, 2π − |Δ|)."""
    gap = np.mod(np.abs(np.asarray(a) - np.asarray(b)), TWO_PI)
    return np.minimum(gap, TWO_PI - gap)


def slot_distance(a: BehaviorDescriptor, b: BehaviorDescriptor, slot: Slot | int) -> float:
    """
    Distance between two descriptors on one slot.

    Euclidean for positions, shortest arc for orientations.

    Raises:
        ContractViolation: If the slot is ineligible in either descriptor
    """
    slot = Slot(slot)
    va, vb = a.value(slot), b.value(slot)
    if slot.is_angular:
        return float(angular_gap(va[0], vb[0]))
    return float(np.linalg.norm(va - vb))


def _tree_coordinates(values: np.ndarray, angular: bool) -> np.ndarray:
    """Angles moved into [0, 2π), the box of the periodic tree."""
    if not angular:
        return values
    shifted = np.mod(values, TWO_PI)
    return np.where(shifted >= TWO_PI, 0.0, shifted)


def _owner_depth(query_owners: np.ndarray, ref_owners: np.ndarray) -> int:
    """Largest number of references held by any one query owner."""
    uniq, counts = np.unique(ref_owners, return_counts=True)
    pos = np.minimum(np.searchsorted(uniq, query_owners), len(uniq) - 1)
    held = uniq[pos] == query_owners
    return int(counts[pos[held]].max()) if np.any(held) else 0


def knn_scores(
    queries: np.ndarray,
    refs: np.ndarray,
    k: int,
    query_owners: Sequence[int] | np.ndarray | None = None,
    ref_owners: Sequence[int] | np.ndarray | None = None,
    angular: bool = False,
) -> np.ndarray:
    """
    Mean distance from each query row to its k nearest reference rows.

    References with the owner of the query are skipped. Rows with fewer
    than k usable references average all of them; rows without any
    give NaN.

    Args:
        queries: (n, d) query vectors
        refs: (m, d) reference vectors
        k: Neighbor count
        query_owners: (n,) owner uid per query, or None to skip nothing
        ref_owners: (m,) owner uid per reference
        angular: Rows hold one angle; distance is the shortest arc

    Raises:
        ContractViolation: If k < 1
    """
    if k < 1:
        raise ContractViolation("k must be at least 1", details={"k": k})
    queries = np.asarray(queries, dtype=float)
    refs = np.asarray(refs, dtype=float)
    if len(queries) == 0 or len(refs) == 0:
        return np.full(len(queries), np.nan)

    exclude = query_owners is not None and ref_owners is not None
    extra = 0
    if exclude:
        query_owners = np.asarray(query_owners, dtype=np.int64)
        ref_owners = np.asarray(ref_owners, dtype=np.int64)
        extra = _owner_depth(query_owners, ref_owners)
    depth = min(k + extra, len(refs))

    tree = cKDTree(_tree_coordinates(refs, angular), boxsize=TWO_PI if angular else None)
    distances, indices = tree.query(_tree_coordinates(queries, angular), k=list(range(1, depth + 1)))
    if exclude:
        distances = np.where(ref_owners[indices] == query_owners[:, None], np.inf, distances)

    nearest = np.sort(distances, axis=1)[:, :k]
    finite = np.isfinite(nearest)
    counts = finite.sum(axis=1)
    totals = np.where(finite, nearest, 0.0).sum(axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(counts > 0, totals / np.maximum(counts, 1), np.nan)


class ReferenceSet:
    """
    Descriptors novelty is measured against, with their owners' uids.

    Usage:
        refs = ReferenceSet.from_sources(population + offspring, archive)
        scored = update_novelty(population + offspring, refs, k=15)
    """

    def __init__(
        self,
        descriptors: Sequence[BehaviorDescriptor],
        owners: Sequence[int | None] | None = None,
    ) -> None:
        self._descriptors = list(descriptors)
        owner_list = list(owners) if owners is not None else [None] * len(self._descriptors)
        if len(owner_list) != len(self._descriptors):
            raise ContractViolation("One owner per reference descriptor")
        self._owners = np.array([-1 if o is None else o for o in owner_list], dtype=np.int64)
        self._slots: dict[Slot, tuple[np.ndarray, np.ndarray]] = {}

    @classmethod
    def from_sources(
        cls,
        individuals: Iterable[Individual],
        archive: NoveltyArchive | None = None,
    ) -> ReferenceSet:
        descriptors: list[BehaviorDescriptor] = []
        owners: list[int | None] = []
        for individual in individuals:
            descriptors.append(individual.descriptor)
            owners.append(individual.uid)
        for entry in archive or ():
            descriptors.append(entry.descriptor)
            owners.append(entry.uid)
        return cls(descriptors, owners)

    def __len__(self) -> int:
        return len(self._descriptors)

    def slot(self, slot: Slot) -> tuple[np.ndarray, np.ndarray]:
        """(values (m, d), owners (m,)) of the slot-eligible references."""
        slot = Slot(slot)
        if slot not in self._slots:
            keep = [i for i, d in enumerate(self._descriptors) if d.is_eligible(slot)]
            width = 1 if slot.is_angular else 2
            values = (
                np.vstack([self._descriptors[i].value(slot) for i in keep])
                if keep else np.zeros((0, width))
            )
            self._slots[slot] = (values, self._owners[keep])
        return self._slots[slot]


def knn_novelty(
    x: BehaviorDescriptor,
    refs: ReferenceSet,
    k: int,
    slot: Slot | int,
    owner: int | None = None,
) -> float | None:
    """
    Mean slot distance from ``x`` to its k nearest eligible references.

    Args:
        x: Scored descriptor
        refs: Reference set
        k: Neighbor count
        slot: Descriptor slot
        owner: uid of ``x``; references with the same owner are skipped

    Returns:
        Novelty, or None when no eligible reference exists

    Raises:
        ContractViolation: If k < 1 or the slot is ineligible in ``x``
    """
    if k < 1:
        raise ContractViolation("k must be at least 1", details={"k": k})
    slot = Slot(slot)
    value = x.value(slot)
    values, owners = refs.slot(slot)
    if owner is None:
        score = knn_scores(value[None, :], values, k, angular=slot.is_angular)[0]
    else:
        score = knn_scores(value[None, :], values, k, [owner], owners, angular=slot.is_angular)[0]
    return None if math.isnan(score) else float(score)


def update_novelty(pool: Sequence[Individual], refs: ReferenceSet, k: int) -> list[Individual]:
    """
    Score every slot of every individual of the pool.

    Ineligible slots and slots without eligible neighbors stay unset.
    Output order matches input order.
    """
    if k < 1:
        raise ContractViolation("k must be at least 1", details={"k": k})
    if not pool:
        return []
    scores = np.full((len(pool), len(Slot)), np.nan)
    uids = np.array([ind.uid for ind in pool], dtype=np.int64)
    for slot in Slot:
        rows = [i for i, ind in enumerate(pool) if ind.descriptor.is_eligible(slot)]
        if not rows:
            continue
        values, owners = refs.slot(slot)
        queries = np.vstack([pool[i].descriptor.value(slot) for i in rows])
        scores[rows, slot.index] = knn_scores(queries, values, k, uids[rows], owners, angular=slot.is_angular)
    return [
        individual.with_novelty([None if math.isnan(s) else float(s) for s in row])
        for individual, row in zip(pool, scores)
    ]
