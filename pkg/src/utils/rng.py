"""
Seeded random streams.

Every random decision of a run draws from a stream keyed by
(seed, purpose, generation[, element]) so results never depend on
call order or thread scheduling.
"""

from __future__ import annotations

from enum import IntEnum

import numpy as np


class Stream(IntEnum):
    """Purposes a run draws randomness for."""
    INIT = 0
    SAMPLE = 1
    MUTATE = 2
    ARCHIVE = 3
    SELECT = 4
    RENDER = 5


def seed_sequence(seed: int, *key: int) -> np.random.SeedSequence:
    """Seed sequence for ``seed`` at spawn path ``key``."""
    return np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """Generator for ``seed`` at spawn path ``key``."""
    return np.random.default_rng(seed_sequence(seed, *key))


def element_rng(parent: np.random.SeedSequence, index: int) -> np.random.Generator:
    """Generator of element ``index`` under ``parent`` (stateless, unlike ``spawn``)."""
    child = np.random.SeedSequence(parent.entropy, spawn_key=tuple(parent.spawn_key) + (int(index),))
    return np.random.default_rng(child)


def as_seed_sequence(source: np.random.SeedSequence | np.random.Generator | int) -> np.random.SeedSequence:
    """Seed sequence from a sequence, an integer seed, or one draw of a generator."""
    if isinstance(source, np.random.SeedSequence):
        return source
    if isinstance(source, np.random.Generator):
        return np.random.SeedSequence(int(source.integers(0, 2**63 - 1)))
    return np.random.SeedSequence(int(source))
