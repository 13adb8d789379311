"""Depolarizing channel split into its X and Z components."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from qdcss.algebra.gf2 import BitVector
from qdcss.exceptions import SpecValidationError


@dataclass(frozen=True)
class ChannelModel:
    """X, Y and Z each with probability p/3, identity with 1 - p."""

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise SpecValidationError(f"depolarizing probability must lie in [0, 1], got {self.p}")

    @property
    def marginal_flip(self) -> float:
        """Probability that one component (X or Z) is flipped: 2p/3."""
        return 2.0 * self.p / 3.0


def sample_components(p: float, draws: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Map uniform draws to (e_x, e_z) bits.

    [0, p/3) is X, [p/3, 2p/3) is Z, [2p/3, p) is Y; anything above is identity.
    """
    third = p / 3.0
    is_x = draws < third
    is_z = (draws >= third) & (draws < 2 * third)
    is_y = (draws >= 2 * third) & (draws < p)
    return (is_x | is_y).astype(np.uint8), (is_z | is_y).astype(np.uint8)


def sample_error(ch: ChannelModel, n: int, rng: np.random.Generator) -> Tuple[BitVector, BitVector]:
    e_x, e_z = sample_components(ch.p, rng.random(n))
    return BitVector.from_bits(e_x), BitVector.from_bits(e_z)
