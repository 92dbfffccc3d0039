"""Generation schedule predicates."""

from __future__ import annotations

from typing import Iterable

from src.models.individual import Individual


def is_impatience_gen(generation: int, period: int) -> bool:
    """True on every ``period``-th generation."""
    return generation % period == 0


def is_regenerate_gen(generation: int, period: int) -> bool:
    """True on every ``period``-th generation."""
    return generation % period == 0


def get_successes(offspring: Iterable[Individual]) -> list[Individual]:
    """Successful individuals, in input order."""
    return [individual for individual in offspring if individual.success]
