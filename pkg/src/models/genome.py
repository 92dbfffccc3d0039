"""
Genome model.

A flat vector of normalized genes: three joint-space waypoints
followed by the gripper-closure timing scalar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from src.core.exceptions import StructuralError, ValidationError
from src.models.base import BaseModel

GENE_MIN = -1.0
GENE_MAX = 1.0


def genome_length(n_joints: int) -> int:
    """Number of genes for an arm with ``n_joints`` joints."""
    return 3 * n_joints + 1


@dataclass(frozen=True)
class Genome(BaseModel):
    """
    Normalized genome.

    Layout for J joints: genes [0, J) waypoint 1, [J, 2J) waypoint 2,
    [2J, 3J) waypoint 3, gene 3J closure timing.
    """

    genes: tuple[float, ...]

    def validate(self) -> None:
        for i, gene in enumerate(self.genes):
            if not (isinstance(gene, float) and math.isfinite(gene)):
                raise ValidationError(f"Gene {i} is not a finite float", field="genes", value=gene)
            if not GENE_MIN <= gene <= GENE_MAX:
                raise ValidationError(f"Gene {i} outside [-1, 1]", field="genes", value=gene)
        if len(self.genes) < 4 or (len(self.genes) - 1) % 3:
            raise StructuralError(
                f"Genome length {len(self.genes)} is not 3*J+1",
                expected=None,
                actual=len(self.genes),
            )

    @classmethod
    def from_array(cls, values: np.ndarray | Sequence[float]) -> Genome:
        return cls(tuple(float(v) for v in np.asarray(values, dtype=float)))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Genome:
        return cls(tuple(float(v) for v in data["genes"]))

    def to_dict(self) -> dict[str, Any]:
        return {"genes": list(self.genes)}

    @property
    def n_joints(self) -> int:
        return (len(self.genes) - 1) // 3

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.genes, dtype=float)

    def waypoint(self, index: int) -> np.ndarray:
        """Normalized genes of waypoint ``index`` (0, 1 or 2)."""
        j = self.n_joints
        return self.array[index * j:(index + 1) * j]

    @property
    def closure_gene(self) -> float:
        return self.genes[-1]

    def __len__(self) -> int:
        return len(self.genes)


def genome_clamp(values: Genome | Sequence[float] | np.ndarray, n_joints: int) -> Genome:
    """
    Clamp every gene into [-1, 1].

    Args:
        values: Genome or raw gene vector
        n_joints: Joint count of the environment

    Returns:
        Clamped genome

    Raises:
        StructuralError: If the vector length is not 3*n_joints+1
    """
    genes = values.array if isinstance(values, Genome) else np.asarray(values, dtype=float)
    expected = genome_length(n_joints)
    if genes.ndim != 1 or genes.shape[0] != expected:
        raise StructuralError(
            f"Genome has {genes.size} genes, expected {expected}",
            expected=expected,
            actual=int(genes.size),
        )
    return Genome.from_array(np.clip(genes, GENE_MIN, GENE_MAX))
