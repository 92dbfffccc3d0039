"""
Feature Selection: seleção de sobreviventes e regeneração.
"""

from src.features.selection.operators import (
    multi_bc_sel,
    ns_select,
    random_sample,
    random_select,
    regenerate_select,
)

__all__ = ["multi_bc_sel", "ns_select", "random_sample", "random_select", "regenerate_select"]
