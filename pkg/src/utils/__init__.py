"""
Utility functions module.

Contains helper functions, validators and seeded random streams.
"""

from src.utils.helpers import canonical_json, ensure_dir_exists, format_summary_line, stable_hash
from src.utils.rng import Stream, make_rng, seed_sequence
from src.utils.validators import validate_finite, validate_probability

__all__ = [
    "canonical_json",
    "ensure_dir_exists",
    "format_summary_line",
    "stable_hash",
    "Stream",
    "make_rng",
    "seed_sequence",
    "validate_finite",
    "validate_probability",
]
