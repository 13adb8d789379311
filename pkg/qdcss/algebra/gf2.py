"""
Bit-packed GF(2) linear algebra.

Rows are stored as little-endian bit-packed ``uint64`` words: bit ``j`` of a row
lives in word ``j // 64`` at bit position ``j % 64``. Padding bits past the logical
length are always zero. All objects are immutable once built; elimination always
works on private copies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from qdcss.exceptions import DimensionMismatchError

WORD_BITS = 64


def _word_count(length: int) -> int:
    return (length + WORD_BITS - 1) // WORD_BITS


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a 2D 0/1 array into a (rows, words) uint64 array."""
    bits = np.atleast_2d(np.asarray(bits, dtype=np.uint8) & 1)
    rows, cols = bits.shape
    words = _word_count(cols)
    padded = np.zeros((rows, words * WORD_BITS), dtype=np.uint8)
    padded[:, :cols] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def unpack_bits(words: np.ndarray, length: int) -> np.ndarray:
    """Inverse of :func:`pack_bits`; returns a (rows, length) uint8 array."""
    words = np.ascontiguousarray(np.atleast_2d(words).astype("<u8"))
    as_bytes = words.view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :length]


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class BitVector:
    """Immutable packed binary vector."""

    __slots__ = ("_length", "_words")

    def __init__(self, length: int, words: Optional[np.ndarray] = None):
        if length < 0:
            raise ValueError(f"BitVector length must be non-negative, got {length}")
        if words is None:
            words = np.zeros(_word_count(length), dtype=np.uint64)
        words = np.asarray(words, dtype=np.uint64).reshape(-1)
        if words.size != _word_count(length):
            raise DimensionMismatchError(
                f"{words.size} words cannot hold a vector of length {length}"
            )
        self._length = length
        self._words = _frozen(words.copy())

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        bits = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits, dtype=np.uint8)
        return cls(bits.size, pack_bits(bits.reshape(1, -1))[0])

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVector":
        bits = np.zeros(length, dtype=np.uint8)
        idx = np.fromiter(support, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= length):
            raise ValueError(f"support index out of range for length {length}")
        bits[idx] = 1
        return cls(length, pack_bits(bits.reshape(1, -1))[0])

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length)

    @property
    def words(self) -> np.ndarray:
        return self._words

    def __len__(self) -> int:
        return self._length

    def to_bits(self) -> np.ndarray:
        return unpack_bits(self._words.reshape(1, -1), self._length)[0]

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.to_bits())

    def weight(self) -> int:
        return int(np.bitwise_count(self._words).sum())

    def is_zero(self) -> bool:
        return not self._words.any()

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self._length:
            raise IndexError(index)
        word, bit = divmod(index, WORD_BITS)
        return int((int(self._words[word]) >> bit) & 1)

    def __xor__(self, other: "BitVector") -> "BitVector":
        if len(other) != self._length:
            raise DimensionMismatchError(
                f"cannot add vectors of length {self._length} and {len(other)}"
            )
        return BitVector(self._length, self._words ^ other.words)

    __add__ = __xor__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._length == len(other) and np.array_equal(self._words, other.words)

    def __hash__(self) -> int:
        return hash((self._length, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BitVector(len={self._length}, weight={self.weight()})"


class BitMatrix:
    """Immutable packed binary matrix stored row-major."""

    __slots__ = ("_rows", "_cols", "_words")

    def __init__(self, words: np.ndarray, cols: int):
        words = np.asarray(words, dtype=np.uint64)
        if words.ndim != 2:
            words = words.reshape(-1, _word_count(cols))
        if words.shape[1] != _word_count(cols):
            raise DimensionMismatchError(
                f"{words.shape[1]} words per row cannot hold {cols} columns"
            )
        self._rows = words.shape[0]
        self._cols = cols
        self._words = _frozen(words.copy())

    @classmethod
    def from_dense(cls, array: np.ndarray) -> "BitMatrix":
        array = np.asarray(array)
        if array.ndim != 2:
            raise DimensionMismatchError(f"expected a 2D array, got shape {array.shape}")
        return cls(pack_bits(array.astype(np.uint8)), array.shape[1])

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], cols: Optional[int] = None) -> "BitMatrix":
        if not rows:
            if cols is None:
                raise ValueError("cols is required for an empty row list")
            return cls.zeros(0, cols)
        cols = len(rows[0]) if cols is None else cols
        for vec in rows:
            if len(vec) != cols:
                raise DimensionMismatchError(f"row of length {len(vec)} in a matrix with {cols} columns")
        return cls(np.stack([vec.words for vec in rows]), cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(np.zeros((rows, _word_count(cols)), dtype=np.uint64), cols)

    @classmethod
    def identity(cls, size: int) -> "BitMatrix":
        return cls.from_dense(np.eye(size, dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> Tuple[int, int]:
        return self._rows, self._cols

    @property
    def words(self) -> np.ndarray:
        return self._words

    def to_dense(self) -> np.ndarray:
        if self._rows == 0:
            return np.zeros((0, self._cols), dtype=np.uint8)
        return unpack_bits(self._words, self._cols)

    def row(self, index: int) -> BitVector:
        return BitVector(self._cols, self._words[index])

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def take_columns(self, indices: Sequence[int]) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense()[:, np.asarray(indices, dtype=np.int64)])

    def row_weights(self) -> np.ndarray:
        return np.bitwise_count(self._words).sum(axis=1).astype(np.int64)

    def col_weights(self) -> np.ndarray:
        return self.to_dense().sum(axis=0).astype(np.int64)

    def weight(self) -> int:
        return int(np.bitwise_count(self._words).sum())

    def is_zero(self) -> bool:
        return not self._words.any()

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return mat_mul(self, other)

    def __xor__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot add matrices of shape {self.shape} and {other.shape}")
        return BitMatrix(self._words ^ other.words, self._cols)

    __add__ = __xor__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._words, other.words)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"BitMatrix(shape={self.shape}, weight={self.weight()})"


def vstack(blocks: Sequence[BitMatrix]) -> BitMatrix:
    cols = {b.cols for b in blocks}
    if len(cols) != 1:
        raise DimensionMismatchError(f"cannot stack matrices with column counts {sorted(cols)}")
    return BitMatrix(np.vstack([b.words for b in blocks]), cols.pop())


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """GF(2) product ``a · b``.

    Raises:
        DimensionMismatchError: If ``a.cols != b.rows``.
    """
    if a.cols != b.rows:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    # float64 products are exact for inner dimensions below 2**53
    product = a.to_dense().astype(np.float64) @ b.to_dense().astype(np.float64)
    return BitMatrix.from_dense(np.rint(product).astype(np.int64) & 1)


def mat_vec(m: BitMatrix, v: BitVector) -> BitVector:
    """Syndrome-style product ``m · vᵀ``."""
    if m.cols != len(v):
        raise DimensionMismatchError(f"cannot multiply {m.shape} by a vector of length {len(v)}")
    parity = np.bitwise_count(m.words & v.words[None, :]).sum(axis=1) & 1
    return BitVector.from_bits(parity.astype(np.uint8))


def mat_vec_many(m: BitMatrix, vectors: np.ndarray) -> np.ndarray:
    """Syndromes of many packed vectors at once.

    Args:
        m: Matrix with ``n`` columns.
        vectors: (batch, words) packed array of length-``n`` vectors.

    Returns:
        (batch, m.rows) uint8 array of syndrome bits.
    """
    hits = np.bitwise_count(vectors[:, None, :] & m.words[None, :, :]).sum(axis=2)
    return (hits & 1).astype(np.uint8)


def _mask(col: int) -> Tuple[int, np.uint64]:
    word, bit = divmod(col, WORD_BITS)
    return word, np.uint64(1) << np.uint64(bit)


def eliminate(words: np.ndarray, cols: int, reduced: bool) -> Tuple[np.ndarray, List[int]]:
    """Row-reduce a private copy of ``words``.

    The pivot for a column is the first remaining row with that bit set, so ties go
    to the lowest row index.
    """
    work = words.copy()
    n_rows = work.shape[0]
    pivots: List[int] = []
    r = 0
    for col in range(cols):
        if r == n_rows:
            break
        word, mask = _mask(col)
        hits = np.flatnonzero(work[r:, word] & mask)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            work[[r, p]] = work[[p, r]]
        targets = (work[:, word] & mask) != 0
        targets[r] = False
        if not reduced:
            targets[:r] = False
        work[targets] ^= work[r]
        pivots.append(col)
        r += 1
    return work[:r], pivots


@dataclass(frozen=True)
class EchelonForm:
    """Reduced row echelon form of a matrix: nonzero rows plus pivot columns."""

    matrix: BitMatrix
    pivots: Tuple[int, ...]

    @classmethod
    def of(cls, m: BitMatrix) -> "EchelonForm":
        words, pivots = eliminate(m.words, m.cols, reduced=True)
        return cls(BitMatrix(words.reshape(-1, _word_count(m.cols)), m.cols), tuple(pivots))

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, v: BitVector) -> bool:
        """True iff ``v`` lies in the row space."""
        if len(v) != self.matrix.cols:
            raise DimensionMismatchError(
                f"vector of length {len(v)} against a basis with {self.matrix.cols} columns"
            )
        return bool(self.contains_many(v.words.reshape(1, -1))[0])

    def contains_many(self, vectors: np.ndarray) -> np.ndarray:
        """Row-space membership for a (batch, words) packed array."""
        vectors = np.atleast_2d(vectors)
        if self.rank == 0:
            return ~vectors.any(axis=1)
        pivot_bits = unpack_bits(vectors, self.matrix.cols)[:, list(self.pivots)]
        # in RREF each pivot column has a single 1, so the pivot bits fix the combination
        combo = pivot_bits.astype(np.float64) @ self.matrix.to_dense().astype(np.float64)
        rebuilt = pack_bits(np.rint(combo).astype(np.int64) & 1)
        return np.all(rebuilt == vectors, axis=1)


def rank(m: BitMatrix) -> int:
    """GF(2) rank by forward elimination; ``m`` is left untouched."""
    _, pivots = eliminate(m.words, m.cols, reduced=False)
    return len(pivots)


def row_basis(m: BitMatrix) -> BitMatrix:
    """Basis of the row space (RREF rows)."""
    return EchelonForm.of(m).matrix


def solve_membership(basis: BitMatrix, v: BitVector) -> bool:
    """True iff ``v`` is in the row space of ``basis``.

    Raises:
        DimensionMismatchError: If ``basis.cols != len(v)``.
    """
    if basis.cols != len(v):
        raise DimensionMismatchError(
            f"vector of length {len(v)} against a basis of shape {basis.shape}"
        )
    return EchelonForm.of(basis).contains(v)


def nullspace_basis(m: BitMatrix) -> BitMatrix:
    """Rows spanning ``{x : m · xᵀ = 0}``; there are ``cols − rank(m)`` of them."""
    echelon = EchelonForm.of(m)
    pivots = list(echelon.pivots)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = np.zeros((len(free), m.cols), dtype=np.uint8)
    if free:
        basis[np.arange(len(free)), free] = 1
        if pivots:
            reduced = echelon.matrix.to_dense()
            basis[:, pivots] = reduced[:, free].T
    return BitMatrix.from_dense(basis) if free else BitMatrix.zeros(0, m.cols)
