"""
Binary min-sum syndrome decoder, flooding schedule.

Messages live on the edges of the Tanner graph, ordered by check, so check-node
updates are segment reductions (``np.minimum.reduceat``) and variable-node sums are a
sparse product with the variable/edge incidence matrix. A batch of syndromes is decoded
at once; rows leave the batch as soon as their hard decision matches the syndrome.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import sparse

from qdcss.algebra.gf2 import BitMatrix, BitVector
from qdcss.config.settings import settings
from qdcss.exceptions import DimensionMismatchError, SpecValidationError
from qdcss.schemas.reports import DecoderSnapshot

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecoderConfig:
    """Min-sum parameters; ``channel_llr`` is log((1 - p') / p') for bit-flip probability p'."""

    channel_llr: float
    max_iterations: int = settings.BP_MAX_ITERATIONS
    normalization: float = settings.BP_NORMALIZATION
    llr_clip: float = settings.LLR_CLIP

    def __post_init__(self):
        if not math.isfinite(self.channel_llr):
            raise SpecValidationError(f"channel LLR must be finite, got {self.channel_llr}")
        if self.max_iterations < 1:
            raise SpecValidationError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if not 0.0 < self.normalization <= 1.0:
            raise SpecValidationError(f"normalization must lie in (0, 1], got {self.normalization}")

    @classmethod
    def for_flip_probability(cls, p_flip: float, **kwargs) -> "DecoderConfig":
        """Config for a binary symmetric prior; p' = 0 saturates at the clip value."""
        if not 0.0 <= p_flip < 1.0:
            raise SpecValidationError(f"flip probability must lie in [0, 1), got {p_flip}")
        clip = kwargs.get("llr_clip", settings.LLR_CLIP)
        llr = clip if p_flip == 0.0 else min(clip, math.log((1.0 - p_flip) / p_flip))
        return cls(channel_llr=llr, **kwargs)

    @classmethod
    def for_depolarizing(cls, p: float, **kwargs) -> "DecoderConfig":
        """Each CSS component sees X (or Z) with marginal probability 2p/3."""
        return cls.for_flip_probability(2.0 * p / 3.0, **kwargs)

    def snapshot(self) -> DecoderSnapshot:
        return DecoderSnapshot(
            max_iterations=self.max_iterations,
            normalization=self.normalization,
            llr_clip=self.llr_clip,
        )


@dataclass(frozen=True)
class DecodeOutcome:
    estimate: BitVector
    converged: bool
    iterations_used: int


class MinSumDecoder:
    """Decoder bound to one parity-check matrix; safe to share across threads."""

    def __init__(self, h: BitMatrix, cfg: DecoderConfig):
        self.h = h
        self.cfg = cfg
        dense = h.to_dense()
        self._m, self._n = dense.shape
        checks, variables = np.nonzero(dense)
        self._edge_check = checks
        self._edge_var = variables
        degrees = np.bincount(checks, minlength=self._m)
        active = np.flatnonzero(degrees)
        offsets = np.concatenate([[0], np.cumsum(degrees)[:-1]])
        self._starts = offsets[active]
        self._edge_slot = np.repeat(np.arange(active.size), degrees[active])
        edges = checks.size
        self._incidence = sparse.csr_matrix(
            (np.ones(edges), (variables, np.arange(edges))), shape=(self._n, edges)
        )
        self._h_sparse = sparse.csr_matrix(dense.astype(np.int32))

    def _check_update(self, v2c: np.ndarray, syn_edge: np.ndarray) -> np.ndarray:
        slot = self._edge_slot
        mags = np.abs(v2c)
        neg = v2c < 0
        parity = np.add.reduceat(neg.astype(np.int32), self._starts, axis=1) & 1
        flip = syn_edge ^ neg ^ (parity[:, slot] == 1)

        min1 = np.minimum.reduceat(mags, self._starts, axis=1)
        min1_edge = min1[:, slot]
        is_min = mags == min1_edge
        ties = np.add.reduceat(is_min.astype(np.int32), self._starts, axis=1)
        min2 = np.minimum.reduceat(np.where(is_min, np.inf, mags), self._starts, axis=1)
        min2 = np.where(ties >= 2, min1, min2)
        out = np.where(is_min & (ties[:, slot] == 1), min2[:, slot], min1_edge)
        out = np.minimum(self.cfg.normalization * out, self.cfg.llr_clip)
        return np.where(flip, -out, out)

    def decode_batch(self, syndromes: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Decode a (batch, m) 0/1 syndrome array.

        Returns:
            (estimates (batch, n) uint8, converged (batch,) bool, iterations (batch,) int)
        """
        syndromes = np.atleast_2d(np.asarray(syndromes, dtype=np.uint8))
        if syndromes.shape[1] != self._m:
            raise DimensionMismatchError(
                f"syndromes of length {syndromes.shape[1]} for a matrix with {self._m} rows"
            )
        batch = syndromes.shape[0]
        estimates = np.zeros((batch, self._n), dtype=np.uint8)
        iterations = np.zeros(batch, dtype=np.int64)
        converged = ~syndromes.any(axis=1)
        pending = np.flatnonzero(~converged)
        if pending.size == 0 or self._edge_check.size == 0:
            iterations[pending] = self.cfg.max_iterations if self._edge_check.size == 0 else 0
            return estimates, converged, iterations

        prior = float(np.clip(self.cfg.channel_llr, -self.cfg.llr_clip, self.cfg.llr_clip))
        target = syndromes[pending]
        syn_edge = target[:, self._edge_check].astype(bool)
        v2c = np.full((pending.size, self._edge_check.size), prior)
        hard = np.zeros((pending.size, self._n), dtype=np.uint8)
        for it in range(1, self.cfg.max_iterations + 1):
            c2v = self._check_update(v2c, syn_edge)
            posterior = prior + np.asarray(self._incidence @ c2v.T).T
            hard = (posterior < 0).astype(np.uint8)
            v2c = np.clip(posterior[:, self._edge_var] - c2v, -self.cfg.llr_clip, self.cfg.llr_clip)
            found = np.asarray(self._h_sparse @ hard.T).T % 2
            done = np.all(found == target, axis=1)
            if done.any():
                rows = pending[done]
                estimates[rows] = hard[done]
                converged[rows] = True
                iterations[rows] = it
                keep = ~done
                pending, target, syn_edge = pending[keep], target[keep], syn_edge[keep]
                v2c, hard = v2c[keep], hard[keep]
                if pending.size == 0:
                    break
        if pending.size:
            estimates[pending] = hard
            iterations[pending] = self.cfg.max_iterations
        return estimates, converged, iterations

    def decode(self, syndrome: BitVector) -> DecodeOutcome:
        if len(syndrome) != self._m:
            raise DimensionMismatchError(f"syndrome of length {len(syndrome)} for a matrix with {self._m} rows")
        estimates, converged, iterations = self.decode_batch(syndrome.to_bits().reshape(1, -1))
        return DecodeOutcome(BitVector.from_bits(estimates[0]), bool(converged[0]), int(iterations[0]))


def decode(h: BitMatrix, syndrome: BitVector, cfg: DecoderConfig) -> DecodeOutcome:
    """One-shot decode; build a :class:`MinSumDecoder` to reuse the graph."""
    return MinSumDecoder(h, cfg).decode(syndrome)
