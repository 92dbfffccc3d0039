"""
Individual model.

Genome, descriptor and evaluation outcome, plus per-slot novelty
and lineage metadata.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

from src.core.exceptions import ValidationError
from src.core.types import MutationKind, Slot
from src.models.base import BaseModel
from src.models.descriptor import BehaviorDescriptor
from src.models.genome import Genome

N_SLOTS = len(Slot)
NoveltyScores = tuple[float | None, ...]
UNSCORED: NoveltyScores = (None,) * N_SLOTS


@dataclass(frozen=True)
class Lineage(BaseModel):
    """Where an individual comes from."""

    generation: int
    kind: MutationKind
    parent_uid: int | None = None

    def validate(self) -> None:
        if self.kind is not MutationKind.INIT and self.parent_uid is None:
            raise ValidationError("Mutated individual without parent", field="parent_uid")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Lineage:
        parent = data.get("parent_uid")
        return cls(
            generation=int(data["generation"]),
            kind=MutationKind(data["kind"]),
            parent_uid=int(parent) if parent is not None else None,
        )


@dataclass(frozen=True)
class Individual(BaseModel):
    """
    Evaluated individual.

    ``novelty`` holds one score per descriptor slot; None marks a
    slot that is not scored (ineligible or no eligible neighbor).
    ``hint`` is the mutation operator forced on the next sampling
    (set on regenerated individuals).
    """

    uid: int
    genome: Genome
    descriptor: BehaviorDescriptor
    success: bool
    lineage: Lineage
    touch_point: tuple[float, float] | None = None
    novelty: NoveltyScores = UNSCORED
    hint: MutationKind | None = None

    def validate(self) -> None:
        if len(self.novelty) != N_SLOTS:
            raise ValidationError("Novelty needs one entry per slot", field="novelty", value=self.novelty)
        for score in self.novelty:
            if score is not None and not (math.isfinite(score) and score >= 0.0):
                raise ValidationError("Novelty scores must be finite and >= 0", field="novelty", value=score)

    def score(self, slot: Slot) -> float | None:
        return self.novelty[Slot(slot).index]

    def with_novelty(self, scores: Sequence[float | None]) -> Individual:
        return self.copy(novelty=tuple(None if s is None else float(s) for s in scores))

    def with_hint(self, hint: MutationKind | None) -> Individual:
        return self.copy(hint=hint)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Individual:
        touch = data.get("touch_point")
        hint = data.get("hint")
        return cls(
            uid=int(data["uid"]),
            genome=Genome.from_dict(data["genome"]),
            descriptor=BehaviorDescriptor.from_dict(data["descriptor"]),
            success=bool(data["success"]),
            lineage=Lineage.from_dict(data["lineage"]),
            touch_point=(float(touch[0]), float(touch[1])) if touch is not None else None,
            novelty=tuple(None if s is None else float(s) for s in data.get("novelty", UNSCORED)),
            hint=MutationKind(hint) if hint is not None else None,
        )
