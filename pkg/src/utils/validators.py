"""Validation utilities."""
from __future__ import annotations

import math
from typing import Iterable


def validate_finite(value: float) -> bool:
    """Validate that value is a finite real."""
    try:
        return math.isfinite(float(value))
    except (TypeError, ValueError):
        return False


def validate_positive(value: float) -> bool:
    """Validate that value is finite and strictly positive."""
    return validate_finite(value) and value > 0


def validate_range(value: float, min_val: float, max_val: float) -> bool:
    """Validate that value is within range (inclusive)."""
    return validate_finite(value) and min_val <= value <= max_val


def validate_probability(value: float) -> bool:
    """Validate that value lies in [0, 1]."""
    return validate_range(value, 0.0, 1.0)


def validate_all_positive(values: Iterable[float]) -> bool:
    """Validate that every value is finite and strictly positive."""
    return all(validate_positive(v) for v in values)


def validate_integer(value: object, minimum: int | None = None) -> bool:
    """Validate an integer (bools excluded), optionally bounded below."""
    if isinstance(value, bool) or not isinstance(value, int):
        return False
    return minimum is None or value >= minimum
