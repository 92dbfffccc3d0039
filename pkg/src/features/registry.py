"""
Registro central de estratégias.

Este módulo é o **único** lugar onde cada estratégia de busca é
descrita para o motor. Quando você criar uma estratégia nova:

1. Adicione seu valor em `Strategy` (`src/core/types.py`).
2. Descreva aqui o seu `StrategyProfile` (seleção, mutação e os
   mecanismos de impaciência/regeneração).
3. Se precisar de um operador novo, implemente-o em
   `src/features/selection/` ou `src/features/variation/`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from src.core.types import Strategy


class SelectionScheme(Enum):
    """Seleção de sobreviventes."""
    MULTI_BC = "multi_bc"
    NOVELTY = "novelty"
    RANDOM = "random"


class MutationScheme(Enum):
    """Operador de mutação aplicado aos filhos."""
    EXPLORE_REFINE = "explore_refine"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class StrategyProfile:
    """Como o motor conduz uma estratégia."""

    strategy: Strategy
    title: str
    description: str
    selection: SelectionScheme
    mutation: MutationScheme
    impatience: bool = False
    regeneration: bool = False


STRATEGY_PROFILES: list[StrategyProfile] = [
    StrategyProfile(
        strategy=Strategy.E2R,
        title="Explore-Refine-Regenerate",
        description="Seleção multi-descritor, mutação explore/refine, impaciência e regeneração",
        selection=SelectionScheme.MULTI_BC,
        mutation=MutationScheme.EXPLORE_REFINE,
        impatience=True,
        regeneration=True,
    ),
    StrategyProfile(
        strategy=Strategy.NS,
        title="Novelty Search",
        description="Novidade sobre o descritor concatenado, mutação uniforme",
        selection=SelectionScheme.NOVELTY,
        mutation=MutationScheme.UNIFORM,
    ),
    StrategyProfile(
        strategy=Strategy.RANDOM,
        title="Seleção aleatória",
        description="Sobreviventes sorteados, mutação uniforme",
        selection=SelectionScheme.RANDOM,
        mutation=MutationScheme.UNIFORM,
    ),
    StrategyProfile(
        strategy=Strategy.MULTIBD,
        title="NS multi-descritor",
        description="Seleção multi-descritor com mutação uniforme",
        selection=SelectionScheme.MULTI_BC,
        mutation=MutationScheme.UNIFORM,
    ),
]


def get_profile(strategy: Strategy | str) -> StrategyProfile:
    """Retorna o perfil de uma estratégia (aceita o valor de CLI)."""
    strategy = Strategy.parse(strategy)
    for profile in STRATEGY_PROFILES:
        if profile.strategy is strategy:
            return profile
    raise KeyError(f"Strategy {strategy.value} has no profile")
