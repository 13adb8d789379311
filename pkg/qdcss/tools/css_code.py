"""Dual-containing CSS codes defined by a single self-orthogonal parity-check matrix."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from qdcss.algebra.gf2 import BitMatrix, BitVector, EchelonForm, mat_vec_many, vstack
from qdcss.exceptions import DimensionMismatchError, InfeasibleConstructionError
from qdcss.schemas.reports import CodeParameters
from qdcss.tools.constructions import check_orthogonality_dense

logger = logging.getLogger(__name__)


class ResidualClass(str, Enum):
    """Effect of a decoding residual on the encoded state."""

    TRIVIAL = "trivial"
    DEGENERATE = "degenerate"
    LOGICAL = "logical"
    SYNDROME_MISMATCH = "syndrome_mismatch"


@dataclass(frozen=True)
class CssCode:
    """CSS code whose X and Z checks are both given by ``h`` (h h^T = 0)."""

    h: BitMatrix
    code_id: str = "code"
    echelon: Optional[EchelonForm] = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.echelon is None:
            object.__setattr__(self, "echelon", EchelonForm.of(self.h))

    @property
    def rank_h(self) -> int:
        return self.echelon.rank

    @property
    def n(self) -> int:
        return self.h.cols

    @property
    def k(self) -> int:
        return self.n - self.rank_h

    @property
    def k_q(self) -> int:
        return self.n - 2 * self.rank_h

    @property
    def r(self) -> float:
        return self.k / self.n

    @property
    def r_q(self) -> float:
        return self.k_q / self.n

    def parameters(self, construction: Optional[str] = None, design_r_q: Optional[float] = None) -> CodeParameters:
        rows = self.h.row_weights()
        cols = self.h.col_weights()
        return CodeParameters(
            code_id=self.code_id,
            construction=construction,
            n=self.n,
            rank=self.rank_h,
            k=self.k,
            k_q=self.k_q,
            r=self.r,
            r_q=self.r_q,
            design_r_q=design_r_q,
            row_weight_range=(int(rows.min()), int(rows.max())),
            col_weight_range=(int(cols.min()), int(cols.max())),
        )


def build_css(h: BitMatrix, code_id: str = "code") -> CssCode:
    """Wrap an orthogonal ``h`` as a dual-containing CSS code.

    Raises:
        InfeasibleConstructionError: If h h^T != 0, or the code has no stabilizers
            (rank 0) or a negative quantum dimension.
    """
    if not check_orthogonality_dense(h):
        raise InfeasibleConstructionError(f"{code_id}: parity-check matrix is not self-orthogonal")
    code = CssCode(h=h, code_id=code_id)
    if code.rank_h == 0:
        raise InfeasibleConstructionError(f"{code_id}: zero parity-check matrix defines no stabilizers")
    if code.k_q < 0:
        raise InfeasibleConstructionError(f"{code_id}: k_q = {code.k_q} < 0")
    logger.info("%s: [[%d, %d]] rank=%d R_Q=%.4f", code_id, code.n, code.k_q, code.rank_h, code.r_q)
    return code


def classify_residual(code: CssCode, residual: BitVector) -> ResidualClass:
    """Classify ``residual = error ^ estimate``.

    Raises:
        DimensionMismatchError: If the residual length differs from n.
    """
    if len(residual) != code.n:
        raise DimensionMismatchError(f"residual of length {len(residual)} for a code of length {code.n}")
    return classify_many(code, residual.words.reshape(1, -1))[0]


def classify_many(code: CssCode, residuals: np.ndarray) -> list:
    """Vectorized :func:`classify_residual` over a (batch, words) packed array."""
    residuals = np.atleast_2d(residuals)
    zero = ~residuals.any(axis=1)
    mismatch = mat_vec_many(code.h, residuals).any(axis=1)
    inside = code.echelon.contains_many(residuals)
    out = []
    for z, m, i in zip(zero, mismatch, inside):
        if z:
            out.append(ResidualClass.TRIVIAL)
        elif m:
            out.append(ResidualClass.SYNDROME_MISMATCH)
        elif i:
            out.append(ResidualClass.DEGENERATE)
        else:
            out.append(ResidualClass.LOGICAL)
    return out


def dpm_column_permutation(n: int, ell: int, index: int) -> np.ndarray:
    """Column map of I_{n/2^ell} (x) D^(index): column b*2^ell + x goes to b*2^ell + (x ^ index)."""
    columns = np.arange(n)
    size = 1 << ell
    return (columns // size) * size + ((columns % size) ^ index)


def _row_keys(matrix: BitMatrix) -> list:
    return sorted(row.tobytes() for row in matrix.words)


def verify_dpm_automorphisms(code: CssCode, ell: int) -> bool:
    """True iff every permutation I (x) D^(i), i < 2^ell, preserves rowspace(h).

    A permutation that only reorders the rows of h is accepted directly; any other
    image is checked by rank against the stored echelon form.

    Raises:
        DimensionMismatchError: If n is not a multiple of 2^ell.
    """
    size = 1 << ell
    if code.n % size:
        raise DimensionMismatchError(f"n={code.n} is not divisible by 2^{ell}")
    dense = code.h.to_dense()
    rows = _row_keys(code.h)
    for index in range(1, size):
        permuted = BitMatrix.from_dense(dense[:, dpm_column_permutation(code.n, ell, index)])
        if _row_keys(permuted) == rows:
            continue
        stacked = EchelonForm.of(vstack([code.echelon.matrix, permuted]))
        if stacked.rank != code.rank_h:
            logger.debug("%s: permutation D^(%d) leaves the row space", code.code_id, index)
            return False
    return True
