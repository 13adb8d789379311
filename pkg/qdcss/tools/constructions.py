"""
Quasi-dyadic dual-containing parity-check matrices.

Construction A alternates an anchor DPM Q with the DPMs of ``z`` along block-row 0,
fills odd block-rows by a right cyclic block shift of the row above and even block-rows
with the left-hand conveyor belt (LHCB) index map. Construction B places u odd-weight
dyadic blocks side by side.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb
from typing import List, Optional, Sequence, Tuple

import numpy as np

from qdcss.algebra.dyadic import QdBlockMatrix, dyadic_mul, xor_parity
from qdcss.algebra.gf2 import BitMatrix, BitVector
from qdcss.exceptions import InfeasibleConstructionError, SpecValidationError

logger = logging.getLogger(__name__)


def _is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


@dataclass(frozen=True)
class ConstructionASpec:
    """Parameters of Construction A.

    Attributes:
        ell: log2 of the block side.
        w: Number of block-rows (column weight), 1 <= w <= u.
        u: Number of block-columns (row weight), even.
        z0: DPM index of the anchor Q.
        z: DPM indices. For w <= 4 exactly u/2 of them; for w > 4 the sub-block
            specials (see :func:`subblock_layout`).
        repeated_index: DPM index of the repeated block D~ used when w > 4.
    """

    ell: int
    w: int
    u: int
    z0: int
    z: Tuple[int, ...]
    repeated_index: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(int(i) for i in self.z))
        size = 1 << self.ell if self.ell >= 0 else 0
        if self.ell < 0:
            raise SpecValidationError(f"ell must be non-negative, got {self.ell}")
        if self.u < 2 or self.u % 2:
            raise SpecValidationError(f"u must be a positive even number, got {self.u}")
        if not 1 <= self.w <= self.u:
            raise SpecValidationError(f"w must lie in [1, u={self.u}], got {self.w}")
        indices = [self.z0, *self.z] + ([self.repeated_index] if self.repeated_index is not None else [])
        bad = [i for i in indices if not 0 <= i < size]
        if bad:
            raise SpecValidationError(f"DPM indices {bad} out of range for ell={self.ell}")


@dataclass(frozen=True)
class ConstructionBSpec:
    """Parameters of Construction B: u odd-weight blocks given by their supports."""

    ell: int
    u: int
    v: int
    supports: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        supports = tuple(tuple(sorted(int(i) for i in s)) for s in self.supports)
        object.__setattr__(self, "supports", supports)
        if self.ell < 0:
            raise SpecValidationError(f"ell must be non-negative, got {self.ell}")
        size = 1 << self.ell
        if self.u < 2 or self.u % 2:
            raise SpecValidationError(f"u must be a positive even number, got {self.u}")
        if self.v < 1 or self.v % 2 == 0:
            raise SpecValidationError(f"v must be a positive odd number, got {self.v}")
        if self.u > comb(size, self.v):
            raise SpecValidationError(
                f"u={self.u} exceeds the {comb(size, self.v)} signatures of weight {self.v} for ell={self.ell}"
            )
        if len(supports) != self.u:
            raise SpecValidationError(f"expected {self.u} supports, got {len(supports)}")
        for i, s in enumerate(supports):
            if len(s) != self.v or len(set(s)) != self.v:
                raise SpecValidationError(f"support {i} must hold {self.v} distinct indices, got {list(s)}")
            if s[0] < 0 or s[-1] >= size:
                raise SpecValidationError(f"support {i} has indices outside [0, {size})")


def construction_a_rows(ell: int, q: int, y: Sequence[int], w: int) -> QdBlockMatrix:
    """Assemble w block-rows from the anchor ``q`` and the odd-column pattern ``y``.

    No orthogonality or distinctness checks are made here.
    """
    half = len(y)
    row0: List[int] = []
    for c in range(half):
        row0 += [q, y[c]]
    rows = [row0]
    for i in range(1, w):
        if i % 2:
            prev = rows[-1]
            rows.append([prev[-1]] + prev[:-1])
        else:
            a = i // 2
            row: List[int] = []
            for c in range(half):
                row += [q, y[(-a - c) % half]]
            rows.append(row)
    return QdBlockMatrix.from_dpm_indices(ell, rows)


def construct_a(spec: ConstructionASpec) -> QdBlockMatrix:
    """Construction A for 1 <= w <= 4; larger w is delegated to the sub-block pattern.

    Raises:
        SpecValidationError: If ``z`` has the wrong length or repeats a DPM.
        InfeasibleConstructionError: If 2^ell cannot hold u/2 + 1 distinct DPMs.
    """
    if spec.w > 4:
        return construct_a_extended(spec)
    half = spec.u // 2
    if half + 1 > 1 << spec.ell:
        raise InfeasibleConstructionError(
            f"u/2 + 1 = {half + 1} distinct DPMs do not fit in 2^{spec.ell}"
        )
    if len(spec.z) != half:
        raise SpecValidationError(f"z must hold u/2 = {half} DPM indices, got {len(spec.z)}")
    if len({spec.z0, *spec.z}) != half + 1:
        raise SpecValidationError(f"z0={spec.z0} and z={list(spec.z)} must be pairwise distinct")
    h = construction_a_rows(spec.ell, spec.z0, spec.z, spec.w)
    logger.debug("Construction A: w=%d u=%d ell=%d", spec.w, spec.u, spec.ell)
    return h


@dataclass(frozen=True)
class SubBlockLayout:
    """Geometry of block-row 0 when w > 4.

    Each sub-block has ``length`` blocks: ``repeats`` pairs [Q, D~] followed by one
    pair [Q, D^(z_t)]. Orthogonality needs every lag 1..max_lag between LHCB rows to be
    non-zero modulo the number of pairs per sub-block.
    """

    w: int
    u: int
    max_lag: int
    pairs: int
    length: int
    repeats: int
    subblocks: int


def subblock_layout(w: int, u: int) -> SubBlockLayout:
    """Smallest sub-block length for w > 4 that divides u.

    Raises:
        InfeasibleConstructionError: If no admissible sub-block length divides u.
    """
    max_lag = (w - 1) // 2 - 1
    pairs = max_lag + 1
    while pairs <= u // 2 and (u // 2) % pairs:
        pairs += 1
    if pairs > u // 2 or (u // 2) % pairs:
        raise InfeasibleConstructionError(
            f"no sub-block length L >= {2 * (max_lag + 1)} divides u={u} for w={w}"
        )
    return SubBlockLayout(
        w=w,
        u=u,
        max_lag=max_lag,
        pairs=pairs,
        length=2 * pairs,
        repeats=pairs - 1,
        subblocks=u // (2 * pairs),
    )


def construct_a_extended(spec: ConstructionASpec) -> QdBlockMatrix:
    """Construction A for 4 < w < u with the repeated-DPM sub-block pattern.

    ``z`` supplies D~ (first entry) followed by the n_s sub-block specials, unless
    ``repeated_index`` is set, in which case ``z`` holds only the specials. Entries past
    those are unused.

    Raises:
        SpecValidationError: If w <= 4, w >= u or u is not a power of two.
        InfeasibleConstructionError: If no sub-block length divides u or there are not
            enough distinct DPMs.
    """
    if not 4 < spec.w < spec.u:
        raise SpecValidationError(f"the sub-block pattern needs 4 < w < u, got w={spec.w}, u={spec.u}")
    if not _is_power_of_two(spec.u):
        raise SpecValidationError(f"u must be a power of two when w > 4, got {spec.u}")
    layout = subblock_layout(spec.w, spec.u)
    if spec.repeated_index is None:
        needed = layout.subblocks + 1
        repeated = spec.z[0] if spec.z else None
        specials = spec.z[1:needed]
    else:
        needed = layout.subblocks
        repeated = spec.repeated_index
        specials = spec.z[:needed]
    if len(spec.z) < needed or repeated is None:
        raise SpecValidationError(f"z must hold at least {needed} DPM indices for w={spec.w}, u={spec.u}")
    distinct = {spec.z0, repeated, *specials}
    if layout.subblocks + 2 > 1 << spec.ell:
        raise InfeasibleConstructionError(
            f"{layout.subblocks + 2} distinct DPMs do not fit in 2^{spec.ell}"
        )
    if len(distinct) != layout.subblocks + 2:
        raise SpecValidationError(f"z0, D~ and the sub-block DPMs must be pairwise distinct, got {sorted(distinct)}")
    y = [
        specials[x // layout.pairs] if x % layout.pairs == layout.pairs - 1 else repeated
        for x in range(spec.u // 2)
    ]
    logger.debug(
        "Construction A (w=%d): L=%d, repeats=%d, sub-blocks=%d",
        spec.w, layout.length, layout.repeats, layout.subblocks,
    )
    return construction_a_rows(spec.ell, spec.z0, y, spec.w)


def construction_a_design_rate(w: int, u: int) -> float:
    """Quantum rate 1 - 2w/u assuming full-rank H."""
    return 1.0 - 2.0 * w / u


def construct_b(spec: ConstructionBSpec) -> QdBlockMatrix:
    """H = [M_0 M_1 ... M_{u-1}] with odd-weight dyadic blocks."""
    return QdBlockMatrix.from_supports(spec.ell, [spec.supports])


def systematic_generator_b(spec: ConstructionBSpec) -> BitMatrix:
    """Generator [I | (M_{u-1} M_0)^T ... ] of the Construction B code.

    Block-row l is [0 .. I .. 0 | M_{u-1} M_l]; its rows have weight at most 1 + v^2.
    """
    h = construct_b(spec)
    size = h.size
    last = h.block(0, spec.u - 1)
    k = size * (spec.u - 1)
    dense = np.zeros((k, k + size), dtype=np.uint8)
    dense[:, :k] = np.eye(k, dtype=np.uint8)
    for l in range(spec.u - 1):
        product = dyadic_mul(last, h.block(0, l))
        dense[l * size:(l + 1) * size, k:] = product.expand().to_dense()
    return BitMatrix.from_dense(dense)


def weight_2v_codewords(spec: ConstructionBSpec, pair: Tuple[int, int]) -> List[BitVector]:
    """The 2 * 2^ell weight-2v codewords supported on blocks i and j.

    Rows of [.. M_j .. M_i ..] (blocks swapped) and of [.. M_i .. M_j ..] placed at
    positions i and j; both satisfy H c^T = M_i M_j + M_j M_i = 0 and
    M_i^2 + M_j^2 = I + I = 0.

    Raises:
        SpecValidationError: If i == j or an index is out of range.
    """
    i, j = sorted(pair)
    if i == j:
        raise SpecValidationError("pair must name two different blocks")
    if i < 0 or j >= spec.u:
        raise SpecValidationError(f"pair {pair} out of range for u={spec.u}")
    size = 1 << spec.ell
    n = spec.u * size
    mi, mj = spec.supports[i], spec.supports[j]
    words: List[BitVector] = []
    for left, right in ((mj, mi), (mi, mj)):
        for x in range(size):
            support = [i * size + (a ^ x) for a in left] + [j * size + (b ^ x) for b in right]
            words.append(BitVector.from_support(n, support))
    return words


def check_orthogonality(h: QdBlockMatrix) -> bool:
    """True iff expand(h) expand(h)^T = 0, evaluated on signatures.

    Block (i, i') of H H^T is the sum over l of M_il M_i'l (dyadic blocks are
    symmetric), so each block pair reduces to the parity of a XOR multiset.
    """
    for i in range(h.w):
        for i2 in range(i, h.w):
            groups = [(h.block(i, l).support, h.block(i2, l).support) for l in range(h.u)]
            if xor_parity(*groups, size=h.size).any():
                return False
    return True


def check_orthogonality_dense(h: BitMatrix) -> bool:
    dense = h.to_dense().astype(np.float64)
    return not (np.rint(dense @ dense.T).astype(np.int64) & 1).any()


def random_construction_a_spec(ell: int, w: int, u: int, seed: Optional[int] = None) -> ConstructionASpec:
    """Random valid Construction A parameters with distinct DPMs.

    Raises:
        InfeasibleConstructionError: If 2^ell is too small for the required DPMs.
    """
    rng = np.random.default_rng(seed)
    if w <= 4:
        needed = u // 2 + 1
    else:
        needed = subblock_layout(w, u).subblocks + 2
    if needed > 1 << ell:
        raise InfeasibleConstructionError(f"{needed} distinct DPMs do not fit in 2^{ell}")
    picks = [int(i) for i in rng.choice(1 << ell, size=needed, replace=False)]
    return ConstructionASpec(ell=ell, w=w, u=u, z0=picks[0], z=tuple(picks[1:]))


def random_construction_b_spec(ell: int, u: int, v: int, seed: Optional[int] = None) -> ConstructionBSpec:
    """Random pairwise-distinct supports of weight v (no difference-set condition)."""
    rng = np.random.default_rng(seed)
    size = 1 << ell
    if u > comb(size, v):
        raise InfeasibleConstructionError(f"u={u} distinct weight-{v} signatures do not exist for ell={ell}")
    seen = set()
    supports: List[Tuple[int, ...]] = []
    while len(supports) < u:
        s = tuple(sorted(int(i) for i in rng.choice(size, size=v, replace=False)))
        if s not in seen:
            seen.add(s)
            supports.append(s)
    return ConstructionBSpec(ell=ell, u=u, v=v, supports=tuple(supports))
