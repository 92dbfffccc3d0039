"""
Archive models.

``NoveltyArchive`` keeps descriptors as long-term novelty memory;
``SuccessArchive`` keeps every individual whose rollout succeeded.
Both are owned and mutated by the engine thread only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from src.core.exceptions import ValidationError
from src.models.descriptor import BehaviorDescriptor
from src.models.individual import Individual


@dataclass(frozen=True)
class ArchiveEntry:
    """Descriptor stored in the novelty archive, with its owner's uid."""

    uid: int
    descriptor: BehaviorDescriptor


class NoveltyArchive:
    """Append-only descriptor store."""

    def __init__(self) -> None:
        self._entries: list[ArchiveEntry] = []

    def add(self, individual: Individual) -> None:
        self._entries.append(ArchiveEntry(individual.uid, individual.descriptor))

    def extend(self, individuals: Iterable[Individual]) -> None:
        for individual in individuals:
            self.add(individual)

    def reset(self) -> None:
        """Forget every entry (impatience restart only)."""
        self._entries.clear()

    @property
    def entries(self) -> tuple[ArchiveEntry, ...]:
        return tuple(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[ArchiveEntry]:
        return iter(self._entries)


class SuccessArchive:
    """Store of successful individuals, in harvest order."""

    def __init__(self, entries: Iterable[Individual] = ()) -> None:
        self._entries: list[Individual] = []
        for entry in entries:
            self.add(entry)

    def add(self, individual: Individual) -> None:
        if not individual.success:
            raise ValidationError(
                f"Individual {individual.uid} is not a success",
                field="success",
                value=individual.success,
            )
        self._entries.append(individual)

    def extend(self, individuals: Iterable[Individual]) -> None:
        for individual in individuals:
            self.add(individual)

    def replace_all(self, individuals: Iterable[Individual]) -> None:
        """Swap entries for updated copies (same uids, refreshed novelty)."""
        updated = list(individuals)
        if [i.uid for i in updated] != [i.uid for i in self._entries]:
            raise ValidationError("Refreshed entries must keep archive order", field="entries")
        self._entries = updated

    def get_by_uid(self, uid: int) -> Individual | None:
        for entry in self._entries:
            if entry.uid == uid:
                return entry
        return None

    @property
    def entries(self) -> tuple[Individual, ...]:
        return tuple(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Individual]:
        return iter(self._entries)

    def __getitem__(self, index: int) -> Individual:
        return self._entries[index]
