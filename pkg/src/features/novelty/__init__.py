"""
Feature Novelty: descritores comportamentais e novidade k-NN por slot.
"""

from src.features.novelty.descriptors import extract_descriptors
from src.features.novelty.evaluator import ReferenceSet, knn_novelty, update_novelty

__all__ = ["ReferenceSet", "extract_descriptors", "knn_novelty", "update_novelty"]
