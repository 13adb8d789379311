"""
Support selection for Construction B with pairwise-disjoint XOR difference sets.

The index range [0, 2^ell) is cut into r = 2^m sub-intervals of size q = 2^(ell-m),
m being the smallest integer with 2^m > v. Every support takes at most one index per
sub-interval, split between the lower and upper half of the sub-intervals according to
the row parity. An index is accepted only if its XORs with the indices already picked
avoid both the current row's differences and those of all earlier rows.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, List, Optional, Sequence, Set, Tuple

import numpy as np

from qdcss.config.settings import settings
from qdcss.exceptions import SpecValidationError
from qdcss.schemas.reports import DifferenceSetIntersection, DifferenceSetReport, InternalCollision
from qdcss.tools.constructions import ConstructionBSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HeuristicConfig:
    """Inputs of the support search."""

    ell: int
    u: int
    v: int
    max_attempts: int = settings.HEURISTIC_MAX_ATTEMPTS
    local_threshold: int = settings.HEURISTIC_LOCAL_THRESHOLD
    seed: Optional[int] = None

    def __post_init__(self):
        if self.v < 1 or self.v % 2 == 0:
            raise SpecValidationError(f"v must be a positive odd number, got {self.v}")
        if self.u < 2 or self.u % 2:
            raise SpecValidationError(f"u must be a positive even number, got {self.u}")
        if self.ell <= self.v:
            raise SpecValidationError(f"the search needs ell > v, got ell={self.ell}, v={self.v}")
        if self.max_attempts < 1 or self.local_threshold < 1:
            raise SpecValidationError("max_attempts and local_threshold must be positive")

    @property
    def m(self) -> int:
        return int(self.v).bit_length()

    @property
    def intervals(self) -> int:
        return 1 << self.m

    @property
    def interval_size(self) -> int:
        return 1 << (self.ell - self.m)


@dataclass(frozen=True)
class DifferenceSet:
    """Pairwise XORs of one support."""

    owner: int
    values: FrozenSet[int]

    @classmethod
    def of(cls, owner: int, support: Sequence[int]) -> "DifferenceSet":
        return cls(owner, frozenset(a ^ b for a, b in combinations(support, 2)))


@dataclass(frozen=True)
class SupportSearch:
    """Result of :func:`generate_supports`; ``supports`` is None on failure."""

    config: HeuristicConfig
    supports: Optional[Tuple[Tuple[int, ...], ...]]
    attempts: int
    rows_completed: int

    @property
    def found(self) -> bool:
        return self.supports is not None

    def to_spec(self) -> ConstructionBSpec:
        if self.supports is None:
            raise ValueError("no supports were found")
        return ConstructionBSpec(ell=self.config.ell, u=self.config.u, v=self.config.v, supports=self.supports)


def _pick_row(
    row: int,
    cfg: HeuristicConfig,
    used: Set[int],
    rng: np.random.Generator,
) -> Optional[Tuple[int, ...]]:
    half = cfg.intervals // 2
    ceil_v, floor_v = (cfg.v + 1) // 2, cfg.v // 2
    n_low, n_high = (ceil_v, floor_v) if row % 2 else (floor_v, ceil_v)
    chosen_intervals = list(rng.permutation(half)[:n_low]) + list(half + rng.permutation(half)[:n_high])
    q = cfg.interval_size
    picked: List[int] = []
    own: Set[int] = set()
    for k in chosen_intervals:
        for _ in range(cfg.local_threshold):
            x = int(rng.integers(k * q, (k + 1) * q))
            new = {x ^ a for a in picked}
            if new & own or new & used:
                continue
            picked.append(x)
            own |= new
            break
        else:
            return None
    return tuple(sorted(picked))


def generate_supports(cfg: HeuristicConfig) -> SupportSearch:
    """Search u supports of weight v with disjoint difference sets.

    Attempts are counted only when a row fails; the search gives up once
    ``max_attempts`` failures have accumulated.
    """
    rng = np.random.default_rng(cfg.seed)
    supports: List[Tuple[int, ...]] = []
    used: Set[int] = set()
    attempts = 0
    while len(supports) < cfg.u:
        row = _pick_row(len(supports), cfg, used, rng)
        if row is None or row in supports:
            attempts += 1
            logger.debug("row %d rejected (attempt %d)", len(supports), attempts)
            if attempts >= cfg.max_attempts:
                logger.warning(
                    "support search exhausted after %d attempts (%d of %d rows)",
                    attempts, len(supports), cfg.u,
                )
                return SupportSearch(cfg, None, attempts, len(supports))
            continue
        supports.append(row)
        used |= DifferenceSet.of(len(supports) - 1, row).values
    logger.info("found %d supports of weight %d for ell=%d after %d failed attempts", cfg.u, cfg.v, cfg.ell, attempts)
    return SupportSearch(cfg, tuple(supports), attempts, cfg.u)


def verify_difference_sets(supports: Sequence[Sequence[int]], ell: int) -> DifferenceSetReport:
    """List internal XOR collisions and pairwise difference-set intersections."""
    size = 1 << ell
    collisions: List[InternalCollision] = []
    sets: List[DifferenceSet] = []
    for i, support in enumerate(supports):
        if any(not 0 <= a < size for a in support):
            raise SpecValidationError(f"support {i} has indices outside [0, {size})")
        counts = Counter(a ^ b for a, b in combinations(support, 2))
        collisions += [
            InternalCollision(row=i, value=value, count=count)
            for value, count in sorted(counts.items())
            if count > 1
        ]
        sets.append(DifferenceSet(i, frozenset(counts)))
    intersections = [
        DifferenceSetIntersection(rows=(a.owner, b.owner), values=sorted(a.values & b.values))
        for a, b in combinations(sets, 2)
        if a.values & b.values
    ]
    return DifferenceSetReport(ell=ell, internal_collisions=collisions, intersections=intersections)
