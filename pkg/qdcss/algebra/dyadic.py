"""
Dyadic signatures, dyadic permutation matrices and quasi-dyadic block matrices.

A dyadic matrix of side 2^ell is fully described by its first row (the signature):
entry (i, j) equals sig[i XOR j]. Signatures are kept as sorted support tuples so that
all construction-time algebra runs on indices, never on dense matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from qdcss.algebra.gf2 import BitMatrix, BitVector
from qdcss.exceptions import DimensionMismatchError


class SquareClass(str, Enum):
    """Value of a dyadic matrix squared."""

    ZERO = "zero"
    IDENTITY = "identity"


def _check_ell(ell: int) -> None:
    if ell < 0:
        raise ValueError(f"ell must be non-negative, got {ell}")


@dataclass(frozen=True)
class DyadicSignature:
    """First row of a 2^ell x 2^ell dyadic matrix, stored by its support."""

    ell: int
    support: Tuple[int, ...]

    def __post_init__(self):
        _check_ell(self.ell)
        size = 1 << self.ell
        support = tuple(sorted(set(int(i) for i in self.support)))
        if len(support) != len(self.support):
            raise ValueError(f"repeated index in signature support {self.support}")
        if support and (support[0] < 0 or support[-1] >= size):
            raise ValueError(f"signature support {self.support} out of range for ell={self.ell}")
        object.__setattr__(self, "support", support)

    @classmethod
    def from_bits(cls, ell: int, bits: Iterable[int]) -> "DyadicSignature":
        bits = np.asarray(list(bits), dtype=np.uint8)
        if bits.size != 1 << ell:
            raise DimensionMismatchError(f"signature of length {bits.size} for ell={ell}")
        return cls(ell, tuple(int(i) for i in np.flatnonzero(bits)))

    @classmethod
    def zero(cls, ell: int) -> "DyadicSignature":
        return cls(ell, ())

    @classmethod
    def dpm(cls, ell: int, index: int) -> "DyadicSignature":
        return cls(ell, (index,))

    @classmethod
    def identity(cls, ell: int) -> "DyadicSignature":
        return cls(ell, (0,))

    @property
    def size(self) -> int:
        return 1 << self.ell

    @property
    def sig(self) -> BitVector:
        return BitVector.from_support(self.size, self.support)

    def weight(self) -> int:
        return len(self.support)

    def is_zero(self) -> bool:
        return not self.support

    def is_dpm(self) -> bool:
        return len(self.support) == 1

    def dpm_index(self) -> int:
        if not self.is_dpm():
            raise ValueError(f"signature of weight {self.weight()} is not a DPM")
        return self.support[0]

    def expand(self) -> BitMatrix:
        return expand(self)

    def __mul__(self, other: "DyadicSignature") -> "DyadicSignature":
        return dyadic_mul(self, other)

    def __add__(self, other: "DyadicSignature") -> "DyadicSignature":
        if self.ell != other.ell:
            raise DimensionMismatchError(f"cannot add signatures with ell={self.ell} and ell={other.ell}")
        return DyadicSignature(self.ell, tuple(set(self.support) ^ set(other.support)))


@dataclass(frozen=True)
class DpmIndex:
    """Index i of the dyadic permutation matrix D^(i)."""

    ell: int
    idx: int

    def __post_init__(self):
        _check_ell(self.ell)
        if not 0 <= self.idx < 1 << self.ell:
            raise ValueError(f"DPM index {self.idx} out of range for ell={self.ell}")

    def signature(self) -> DyadicSignature:
        return DyadicSignature.dpm(self.ell, self.idx)

    def __mul__(self, other: "DpmIndex") -> "DpmIndex":
        if self.ell != other.ell:
            raise DimensionMismatchError(f"cannot multiply DPMs with ell={self.ell} and ell={other.ell}")
        return DpmIndex(self.ell, self.idx ^ other.idx)


def xor_parity(*groups: Tuple[Sequence[int], Sequence[int]], size: int) -> np.ndarray:
    """Parity of the multiset {a XOR b} over all pairs of every (A, B) group."""
    counts = np.zeros(size, dtype=np.int64)
    for left, right in groups:
        if len(left) and len(right):
            xors = np.bitwise_xor.outer(np.asarray(left), np.asarray(right)).ravel()
            counts += np.bincount(xors, minlength=size)
    return counts & 1


def dyadic_mul(a: DyadicSignature, b: DyadicSignature) -> DyadicSignature:
    """Signature of the product: c[k] = XOR_i a[i] b[i XOR k].

    Raises:
        DimensionMismatchError: If the signatures have different ell.
    """
    if a.ell != b.ell:
        raise DimensionMismatchError(f"cannot multiply signatures with ell={a.ell} and ell={b.ell}")
    parity = xor_parity((a.support, b.support), size=a.size)
    return DyadicSignature(a.ell, tuple(int(i) for i in np.flatnonzero(parity)))


def dyadic_square_class(a: DyadicSignature) -> SquareClass:
    """Odd-weight signatures square to the identity, even-weight ones to zero."""
    return SquareClass.IDENTITY if a.weight() % 2 else SquareClass.ZERO


def expand(a: DyadicSignature) -> BitMatrix:
    """Dense 2^ell x 2^ell matrix with entry (i, j) = sig[i XOR j]."""
    return BitMatrix.from_dense(_dense(a))


def _dense(a: DyadicSignature) -> np.ndarray:
    bits = np.zeros(a.size, dtype=np.uint8)
    bits[list(a.support)] = 1
    idx = np.arange(a.size)
    return bits[idx[:, None] ^ idx[None, :]]


@dataclass(frozen=True)
class QdBlockMatrix:
    """A w x u array of dyadic blocks sharing one ell."""

    ell: int
    blocks: Tuple[Tuple[DyadicSignature, ...], ...]

    def __post_init__(self):
        _check_ell(self.ell)
        blocks = tuple(tuple(row) for row in self.blocks)
        if not blocks or not blocks[0]:
            raise ValueError("a quasi-dyadic matrix needs at least one block")
        width = len(blocks[0])
        for i, row in enumerate(blocks):
            if len(row) != width:
                raise DimensionMismatchError(f"block-row {i} has {len(row)} blocks, expected {width}")
            for block in row:
                if block.ell != self.ell:
                    raise DimensionMismatchError(f"block with ell={block.ell} in a matrix with ell={self.ell}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_dpm_indices(cls, ell: int, rows: Sequence[Sequence[Optional[int]]]) -> "QdBlockMatrix":
        """Build from DPM indices; ``None`` marks a zero block."""
        return cls(
            ell,
            tuple(
                tuple(DyadicSignature.zero(ell) if i is None else DyadicSignature.dpm(ell, i) for i in row)
                for row in rows
            ),
        )

    @classmethod
    def from_supports(cls, ell: int, rows: Sequence[Sequence[Sequence[int]]]) -> "QdBlockMatrix":
        return cls(ell, tuple(tuple(DyadicSignature(ell, tuple(s)) for s in row) for row in rows))

    @property
    def w(self) -> int:
        return len(self.blocks)

    @property
    def u(self) -> int:
        return len(self.blocks[0])

    @property
    def size(self) -> int:
        return 1 << self.ell

    @property
    def shape(self) -> Tuple[int, int]:
        """Shape of the expanded binary matrix."""
        return self.w * self.size, self.u * self.size

    def block(self, i: int, j: int) -> DyadicSignature:
        return self.blocks[i][j]

    def is_dpm_array(self) -> bool:
        """True when every block is either zero or a single DPM."""
        return all(b.weight() <= 1 for row in self.blocks for b in row)

    def dpm_indices(self) -> List[List[Optional[int]]]:
        if not self.is_dpm_array():
            raise ValueError("matrix contains blocks of weight > 1")
        return [[b.support[0] if b.support else None for b in row] for row in self.blocks]

    def expand(self) -> BitMatrix:
        return BitMatrix.from_dense(self.to_dense())

    def to_dense(self) -> np.ndarray:
        return np.block([[_dense(b) for b in row] for row in self.blocks])
