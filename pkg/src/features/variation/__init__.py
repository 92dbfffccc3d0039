"""
Feature Variation: população inicial e operadores de mutação.
"""

from src.features.variation.operators import (
    init_pop,
    mutate_er,
    mutate_explore,
    mutate_refine,
    mutate_uniform,
    mutate_uniform_batch,
)

__all__ = [
    "init_pop",
    "mutate_er",
    "mutate_explore",
    "mutate_refine",
    "mutate_uniform",
    "mutate_uniform_batch",
]
