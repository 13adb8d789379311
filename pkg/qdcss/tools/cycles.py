"""
Girth and short-cycle census of Tanner graphs.

Two independent routes are provided: graph enumeration on the expanded Tanner graph
(networkx) and block-level counting on the quasi-dyadic structure. The block route
relies on the XOR translations (block, offset) -> (block, offset ^ x), which are graph
automorphisms, so walks only need to be enumerated from offset 0.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from qdcss.algebra.dyadic import QdBlockMatrix
from qdcss.algebra.gf2 import BitMatrix
from qdcss.exceptions import SpecValidationError
from qdcss.schemas.reports import CycleCensus

logger = logging.getLogger(__name__)

CYCLE_LENGTHS = (4, 6, 8)


@dataclass(frozen=True)
class TannerGraph:
    """Bipartite graph of a parity-check matrix.

    Check i is node i, variable j is node ``n_checks + j``.
    """

    graph: nx.Graph
    n_checks: int
    n_vars: int
    matrix: BitMatrix

    @classmethod
    def from_matrix(cls, m: BitMatrix) -> "TannerGraph":
        g = nx.Graph()
        g.add_nodes_from(range(m.rows), bipartite=0)
        g.add_nodes_from(range(m.rows, m.rows + m.cols), bipartite=1)
        rows, cols = np.nonzero(m.to_dense())
        g.add_edges_from(zip(rows.tolist(), (cols + m.rows).tolist()))
        return cls(g, m.rows, m.cols, m)

    @property
    def edge_count(self) -> int:
        return self.graph.number_of_edges()


def fourcycle_count_matrix(m: BitMatrix) -> int:
    """Sum over unordered row pairs of C(shared columns, 2)."""
    dense = m.to_dense().astype(np.int64)
    gram = dense @ dense.T
    upper = gram[np.triu_indices(m.rows, k=1)]
    return int((upper * (upper - 1) // 2).sum())


def girth_bfs(g: TannerGraph, cap: int = 8) -> CycleCensus:
    """Exact girth (None when above ``cap``) and cycle counts up to ``cap``."""
    if cap < 4 or cap % 2:
        raise SpecValidationError(f"cap must be an even number >= 4, got {cap}")
    counts: Dict[int, int] = {4: fourcycle_count_matrix(g.matrix)}
    if counts[4] == 0:
        girth = nx.girth(g.graph)
        if girth > cap:
            for length in range(6, cap + 1, 2):
                counts[length] = 0
            return CycleCensus(girth=None, cap=cap, counts=counts, method="graph")
    if cap >= 6:
        lengths = Counter(len(c) for c in nx.simple_cycles(g.graph, length_bound=cap))
        for length in range(6, cap + 1, 2):
            counts[length] = lengths.get(length, 0)
    nonzero = [length for length, count in sorted(counts.items()) if count]
    return CycleCensus(girth=nonzero[0] if nonzero else None, cap=cap, counts=counts, method="graph")


def girth_2x2_dpm(rho: Sequence[int]) -> int:
    """Girth of a 2x2 DPM array given as (rho00, rho01, rho10, rho11): 4 or 8."""
    if len(rho) != 4:
        raise SpecValidationError(f"expected four DPM indices, got {len(rho)}")
    r00, r01, r10, r11 = rho
    return 4 if r00 ^ r11 ^ r01 ^ r10 == 0 else 8


def _walk_nodes(h: QdBlockMatrix, rows: Sequence[int], cols: Sequence[int]) -> Optional[List[Tuple[str, int, int]]]:
    """Nodes visited by the block walk starting at check (rows[0], 0); None if it does
    not close at its start."""
    t = len(rows)
    offset = 0
    nodes: List[Tuple[str, int, int]] = []
    for k in range(t):
        j, l, j_next = rows[k], cols[k], rows[(k + 1) % t]
        nodes.append(("c", j, offset))
        offset ^= h.block(j, l).dpm_index()
        nodes.append(("v", l, offset))
        offset ^= h.block(j_next, l).dpm_index()
    return nodes if offset == 0 else None


def has_cycle_lambda(h: QdBlockMatrix, row_seq: Sequence[int], col_seq: Sequence[int]) -> bool:
    """True iff the closed block sequence yields cycles of length 2 * len(col_seq).

    ``row_seq`` may repeat its first entry at the end. The XOR of the
    rho(j_k, l_k) ^ rho(j_{k+1}, l_k) terms must vanish and the walk must be simple;
    the expansion then holds exactly 2^ell such cycles.

    Raises:
        SpecValidationError: For malformed sequences or zero / non-DPM blocks.
    """
    rows = list(row_seq)
    cols = list(col_seq)
    if len(rows) == len(cols) + 1 and rows[0] == rows[-1]:
        rows = rows[:-1]
    t = len(cols)
    if t < 2 or len(rows) != t:
        raise SpecValidationError(f"need matching row/column sequences of length >= 2, got {row_seq}, {col_seq}")
    for k in range(t):
        if rows[k] == rows[(k + 1) % t] or cols[k] == cols[(k + 1) % t]:
            raise SpecValidationError("consecutive block indices must differ")
        for j in (rows[k], rows[(k + 1) % t]):
            if not (0 <= j < h.w and 0 <= cols[k] < h.u):
                raise SpecValidationError(f"block ({j}, {cols[k]}) outside a {h.w}x{h.u} array")
            if not h.block(j, cols[k]).is_dpm():
                raise SpecValidationError(f"block ({j}, {cols[k]}) is not a DPM")
    nodes = _walk_nodes(h, rows, cols)
    return nodes is not None and len(set(nodes)) == len(nodes)


def _closed_walks(h: QdBlockMatrix, start_row: int, length: int) -> int:
    """Closed simple walks of ``length`` edges from check (start_row, 0)."""
    supports = [[h.block(j, l).support for l in range(h.u)] for j in range(h.w)]
    start = ("c", start_row, 0)
    steps = length // 2
    total = 0

    def extend(row: int, offset: int, depth: int, visited: set) -> None:
        nonlocal total
        for l in range(h.u):
            for a in supports[row][l]:
                var = ("v", l, offset ^ a)
                if var in visited:
                    continue
                for j in range(h.w):
                    for b in supports[j][l]:
                        check = ("c", j, offset ^ a ^ b)
                        if depth + 1 == steps:
                            if check == start and (j, b) != (row, a):
                                total += 1
                            continue
                        if check in visited:
                            continue
                        visited.add(var)
                        visited.add(check)
                        extend(j, offset ^ a ^ b, depth + 1, visited)
                        visited.discard(check)
                        visited.discard(var)

    extend(start_row, 0, 0, {start})
    return total


def count_cycles_blockwise(h: QdBlockMatrix, length: int) -> int:
    """Number of cycles of the given length in expand(h), from block walks.

    Every cycle of length lambda is traversed by lambda walks (start check, direction),
    and the 2^ell offset translations carry walks from offset 0 to all others.
    """
    if length not in CYCLE_LENGTHS:
        raise SpecValidationError(f"length must be one of {CYCLE_LENGTHS}, got {length}")
    walks = sum(_closed_walks(h, j, length) for j in range(h.w))
    return h.size * walks // length


def _four_cycle_terms(h: QdBlockMatrix) -> Tuple[int, int]:
    total = 0
    local = 0
    for i in range(h.w):
        for i2 in range(i, h.w):
            per_block = []
            for l in range(h.u):
                left, right = h.block(i, l).support, h.block(i2, l).support
                if left and right:
                    xors = np.bitwise_xor.outer(np.asarray(left), np.asarray(right)).ravel()
                    per_block.append(np.bincount(xors, minlength=h.size))
            if not per_block:
                continue
            n_l = np.stack(per_block).astype(np.int64)
            shared = n_l.sum(axis=0)
            pair_total = shared * (shared - 1) // 2
            pair_local = (n_l * (n_l - 1) // 2).sum(axis=0)
            if i == i2:
                # rows x and x ^ t of one block-row: t != 0, 2^(ell-1) unordered pairs per t
                total += (h.size // 2) * int(pair_total[1:].sum())
                local += (h.size // 2) * int(pair_local[1:].sum())
            else:
                total += h.size * int(pair_total.sum())
                local += h.size * int(pair_local.sum())
    return total, local


def count_4cycles_blockwise(h: QdBlockMatrix) -> int:
    """Total number of length-4 cycles of expand(h) from signature XOR collisions.

    For rows (i, x) and (i', x') the shared columns in block l number
    N_l(t) = #{(a, b) in S_il x S_i'l : a ^ b = t} with t = x ^ x'.
    """
    return _four_cycle_terms(h)[0]


def four_cycle_breakdown(h: QdBlockMatrix) -> Tuple[int, int, int]:
    """(total, unavoidable, avoidable) length-4 cycles.

    Unavoidable cycles have both variable nodes in one block-column; they exist in any
    block of weight >= 3 regardless of how supports are chosen.
    """
    total, local = _four_cycle_terms(h)
    return total, local, total - local


def census_blockwise(h: QdBlockMatrix, cap: int = 8) -> CycleCensus:
    """Cycle census predicted from block algebra for lengths up to ``cap``."""
    if cap not in CYCLE_LENGTHS:
        raise SpecValidationError(f"cap must be one of {CYCLE_LENGTHS}, got {cap}")
    total, local, avoidable = four_cycle_breakdown(h)
    counts = {4: total}
    for length in range(6, cap + 1, 2):
        counts[length] = count_cycles_blockwise(h, length)
    nonzero = [length for length, count in sorted(counts.items()) if count]
    return CycleCensus(
        girth=nonzero[0] if nonzero else None,
        cap=cap,
        counts=counts,
        unavoidable_4=local,
        avoidable_4=avoidable,
        method="blockwise",
    )
