"""Seed handling. Stream ``i`` of seed ``s`` is independent of how work is scheduled."""

from typing import Optional

import numpy as np

from qdcss.config.settings import settings


def resolve_seed(seed: Optional[int]) -> int:
    return settings.DEFAULT_SEED if seed is None else int(seed)


def stream(seed: int, index: int, domain: int = 0) -> np.random.Generator:
    """Generator for work item ``index``; ``domain`` separates unrelated uses of one seed."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(domain, index)))
