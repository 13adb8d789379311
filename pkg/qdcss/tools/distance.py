"""
Minimum-distance searches for dual-containing codes.

Exhaustive mode is exact up to ``max_weight``: a weight-w codeword is a set of w
columns of H whose syndromes XOR to zero, found by meeting floor(w/2)-subsets against
ceil(w/2)-subsets in a syndrome table. Probabilistic mode is a Lee-Brickell style
information-set search over random column permutations and only yields upper bounds.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from math import comb
from operator import xor
from typing import Dict, Iterable, List, Optional, Set, Tuple

import numpy as np
from tqdm import tqdm

from qdcss.algebra.gf2 import BitMatrix, BitVector, eliminate, pack_bits, unpack_bits
from qdcss.config.settings import settings
from qdcss.exceptions import IntractableSearchError, SpecValidationError
from qdcss.schemas.reports import DistanceMethod, DistanceReport
from qdcss.tools.css_code import CssCode
from qdcss.utils.rng import resolve_seed, stream

logger = logging.getLogger(__name__)

ISD_CHUNK = 500


@dataclass(frozen=True)
class Exhaustive:
    max_weight: int


@dataclass(frozen=True)
class Probabilistic:
    iterations: int = settings.ISD_ITERATIONS
    seed: Optional[int] = None
    pairs: bool = True


def _column_syndromes(h: BitMatrix) -> List[int]:
    """Column j of h as a Python int (bit i = h[i, j])."""
    return [int.from_bytes(row.astype("<u8").tobytes(), "little") for row in h.transpose().words]


def split_search_effort(n: int, max_weight: int) -> int:
    """Subsets visited by the split enumeration for weights 1..max_weight."""
    return sum(comb(n, w - w // 2) for w in range(1, max_weight + 1)) + comb(n, max_weight // 2)


def _codewords_of_weight(
    syndromes: List[int],
    weight: int,
    tables: Dict[int, Dict[int, List[Tuple[int, ...]]]],
) -> Iterable[Tuple[int, ...]]:
    n = len(syndromes)
    low = weight // 2
    if low not in tables:
        table: Dict[int, List[Tuple[int, ...]]] = {}
        for subset in combinations(range(n), low):
            table.setdefault(reduce(xor, (syndromes[i] for i in subset), 0), []).append(subset)
        tables[low] = table
    table = tables[low]
    for subset in combinations(range(n), weight - low):
        s = reduce(xor, (syndromes[i] for i in subset), 0)
        for other in table.get(s, ()):
            if not set(other) & set(subset):
                yield tuple(sorted(other + subset))


def exhaustive_distance(code: CssCode, max_weight: int) -> DistanceReport:
    """Exact classical and logical-only minimum weights up to ``max_weight``.

    Raises:
        IntractableSearchError: If the enumeration would exceed the configured guards.
    """
    n = code.n
    if max_weight < 1:
        raise SpecValidationError(f"max_weight must be positive, got {max_weight}")
    effort = split_search_effort(n, max_weight)
    if effort > settings.EXHAUSTIVE_CANDIDATE_LIMIT or comb(n, max_weight // 2) > settings.SPLIT_TABLE_LIMIT:
        raise IntractableSearchError(
            f"exhaustive search to weight {max_weight} on n={n} needs {effort} subsets "
            f"(limit {settings.EXHAUSTIVE_CANDIDATE_LIMIT}, table limit {settings.SPLIT_TABLE_LIMIT})"
        )
    syndromes = _column_syndromes(code.h)
    tables: Dict[int, Dict[int, List[Tuple[int, ...]]]] = {}
    classical: Optional[int] = None
    logical: Optional[int] = None
    for weight in range(1, max_weight + 1):
        seen: Set[Tuple[int, ...]] = set()
        for support in _codewords_of_weight(syndromes, weight, tables):
            if support in seen:
                continue
            seen.add(support)
            if classical is None:
                classical = weight
            if not code.echelon.contains(BitVector.from_support(n, support)):
                logical = weight
                break
        logger.debug("weight %d: %d codewords", weight, len(seen))
        if logical is not None:
            break
    logger.info("%s: exhaustive d(C)=%s, logical-only d=%s (weights <= %d)", code.code_id, classical, logical, max_weight)
    return DistanceReport(
        method=DistanceMethod.EXHAUSTIVE,
        n=n,
        classical_d=classical,
        classical_exact=classical is not None,
        logical_d=logical,
        logical_exact=logical is not None,
        max_weight=max_weight,
        effort=effort,
    )


def _isd_chunk(
    dense: np.ndarray,
    code: CssCode,
    seed: int,
    chunk: int,
    iterations: int,
    pairs: bool,
) -> Tuple[Optional[int], Optional[int]]:
    rng = stream(seed, chunk, domain=1)
    rows, n = dense.shape
    best_classical: Optional[int] = None
    best_logical: Optional[int] = None
    for _ in range(iterations):
        perm = rng.permutation(n)
        words, pivots = eliminate(pack_bits(dense[:, perm]), n, reduced=True)
        reduced = unpack_bits(words, n)
        free = np.setdiff1d(np.arange(n), pivots)
        if free.size == 0:
            continue
        cols = reduced[:, free]  # pivot part of the codeword for each free column
        candidates: List[Tuple[int, np.ndarray]] = []
        singles = 1 + cols.sum(axis=0)
        for j in np.argsort(singles, kind="stable")[:8]:
            candidates.append((int(singles[j]), np.array([j])))
        if pairs and free.size > 1:
            packed = pack_bits(cols.T)
            pair_weights = 2 + np.bitwise_count(packed[:, None, :] ^ packed[None, :, :]).sum(axis=2)
            upper = np.triu_indices(free.size, k=1)
            flat = pair_weights[upper]
            for idx in np.argsort(flat, kind="stable")[:8]:
                candidates.append((int(flat[idx]), np.array([upper[0][idx], upper[1][idx]])))
        for weight, chosen in sorted(candidates, key=lambda item: item[0]):
            if best_classical is None or weight < best_classical:
                best_classical = weight
            if best_logical is not None and weight >= best_logical:
                continue
            x_perm = np.zeros(n, dtype=np.uint8)
            x_perm[free[chosen]] = 1
            x_perm[list(pivots)] = cols[:, chosen].sum(axis=1) & 1
            x = np.zeros(n, dtype=np.uint8)
            x[perm] = x_perm
            if not code.echelon.contains(BitVector.from_bits(x)):
                best_logical = weight
    return best_classical, best_logical


def probabilistic_distance(code: CssCode, iterations: int, seed: Optional[int] = None,
                           pairs: bool = True, workers: int = 1, progress: bool = False) -> DistanceReport:
    """Upper bounds on d(C) and on the logical-only distance by information-set search."""
    seed = resolve_seed(seed)
    dense = code.h.to_dense()
    chunks = [min(ISD_CHUNK, iterations - start) for start in range(0, iterations, ISD_CHUNK)]
    classical: Optional[int] = None
    logical: Optional[int] = None
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        futures = [
            executor.submit(_isd_chunk, dense, code, seed, i, size, pairs)
            for i, size in enumerate(chunks)
        ]
        for future in tqdm(futures, desc="ISD", unit="chunk", disable=not progress):
            c, l = future.result()
            if c is not None and (classical is None or c < classical):
                classical = c
            if l is not None and (logical is None or l < logical):
                logical = l
    logger.info("%s: ISD upper bounds d(C)<=%s, logical-only<=%s after %d iterations",
                code.code_id, classical, logical, iterations)
    return DistanceReport(
        method=DistanceMethod.PROBABILISTIC,
        n=code.n,
        classical_d=classical,
        logical_d=logical,
        iterations=iterations,
        seed=seed,
        effort=iterations,
    )


def min_distance(code: CssCode, mode, workers: int = 1, progress: bool = False) -> DistanceReport:
    """Dispatch on ``Exhaustive(max_weight)`` or ``Probabilistic(iterations, seed)``."""
    if isinstance(mode, Exhaustive):
        return exhaustive_distance(code, mode.max_weight)
    if isinstance(mode, Probabilistic):
        return probabilistic_distance(code, mode.iterations, mode.seed, mode.pairs, workers, progress)
    raise SpecValidationError(f"unknown distance mode {mode!r}")
