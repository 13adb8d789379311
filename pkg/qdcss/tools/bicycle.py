"""Dual-containing bicycle baseline: H0 = [C | C^T] with rows removed."""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np

from qdcss.algebra.gf2 import BitMatrix
from qdcss.exceptions import InfeasibleConstructionError, SpecValidationError

logger = logging.getLogger(__name__)


def circulant(size: int, support: np.ndarray) -> np.ndarray:
    """Dense circulant whose row i has ones at (s + i) mod size."""
    dense = np.zeros((size, size), dtype=np.uint8)
    rows = np.arange(size)[:, None]
    dense[rows, (np.asarray(support)[None, :] + rows) % size] = 1
    return dense


def deletion_period(size: int, count: int) -> int:
    """Period of the evenly spaced deletion pattern of ``count`` out of ``size`` rows."""
    return size // math.gcd(size, count) if count else 1


def uniform_row_deletion(size: int, count: int) -> np.ndarray:
    """Delete rows floor(t * size / count) for t < count, i.e. evenly spaced along the shift.

    The deleted set repeats with period :func:`deletion_period`, so the weight a column of
    [C | C^T] loses depends only on the residues of the circulant support modulo that period.

    Returns:
        Indices of the kept rows, in their original order.
    """
    if not 0 <= count <= size:
        raise InfeasibleConstructionError(f"cannot delete {count} of {size} rows")
    keep = np.ones(size, dtype=bool)
    keep[(np.arange(count, dtype=np.int64) * size) // count] = False
    return np.flatnonzero(keep)


def balanced_support(size: int, weight: int, period: int, rng: np.random.Generator) -> np.ndarray:
    """Random ``weight``-subset of Z_size whose residue counts modulo ``period`` differ by at most one."""
    per_class = size // period
    base, extra = divmod(weight, period)
    counts = np.full(period, base, dtype=np.int64)
    counts[rng.choice(period, size=extra, replace=False)] += 1
    chosen = [
        residue + period * rng.choice(per_class, size=int(c), replace=False)
        for residue, c in enumerate(counts)
        if c
    ]
    return np.sort(np.concatenate(chosen)) if chosen else np.zeros(0, dtype=np.int64)


def construct_bicycle(n: int, row_weight: int, target_k: int, seed: Optional[int] = None) -> BitMatrix:
    """Bicycle parity-check matrix with target_k/2 evenly spaced rows removed from [C | C^T].

    The circulant support is drawn with balanced residues modulo the deletion period, which
    keeps the column-weight spread at most min(a, b - a, r+, r-) for a deleted rows per period
    b and r+ / r- residue classes holding the larger / smaller share of the support.

    Raises:
        SpecValidationError: If n or row_weight is odd, or target_k is odd or negative.
        InfeasibleConstructionError: If the circulant cannot hold row_weight/2 ones or
            target_k is not below n/2.
    """
    if n < 2 or n % 2:
        raise SpecValidationError(f"n must be a positive even number, got {n}")
    if row_weight < 2 or row_weight % 2:
        raise SpecValidationError(f"row_weight must be a positive even number, got {row_weight}")
    if target_k < 0 or target_k % 2:
        raise SpecValidationError(f"target_k must be a non-negative even number, got {target_k}")
    half = n // 2
    if row_weight // 2 > half:
        raise InfeasibleConstructionError(f"a {half}x{half} circulant cannot have row weight {row_weight // 2}")
    if target_k >= half:
        raise InfeasibleConstructionError(f"target_k must be below n/2 = {half}, got {target_k}")

    removed = target_k // 2
    period = deletion_period(half, removed)
    rng = np.random.default_rng(seed)
    support = balanced_support(half, row_weight // 2, period, rng)
    c = circulant(half, support)
    h0 = np.hstack([c, c.T])
    kept = uniform_row_deletion(half, removed)
    h = h0[kept]
    col_weights = h.sum(axis=0)
    logger.info(
        "bicycle n=%d row weight=%d: kept %d rows (period %d), column weights %d..%d",
        n, row_weight, kept.size, period, col_weights.min(), col_weights.max(),
    )
    return BitMatrix.from_dense(h)
