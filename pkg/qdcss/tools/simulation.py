"""
Monte-Carlo logical error rates of dual-containing CSS codes under depolarizing noise.

Each trial samples (e_x, e_z) from its own random stream, so trial t is the same no matter
how trials are grouped or scheduled. Both components are decoded against the same H. Under
``component`` accounting a trial fails when the X residual has the wrong syndrome or is a
non-trivial logical; the Z component of a dual-containing code behaves the same way. Under
``joint`` accounting a trial fails if either residual does. Both tallies are always reported.
Batches are consumed in order and the run stops at the exact trial that produced the
target error count, so results do not depend on the number of workers.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from qdcss.algebra.gf2 import mat_vec_many, pack_bits
from qdcss.config.settings import settings
from qdcss.exceptions import SpecValidationError
from qdcss.schemas.reports import SimResult
from qdcss.services.file_service import FileService
from qdcss.tools.bp_decoder import DecoderConfig, MinSumDecoder
from qdcss.tools.channel import ChannelModel, sample_components
from qdcss.tools.css_code import CssCode, ResidualClass, classify_many
from qdcss.utils.rng import resolve_seed, stream
from qdcss.utils.stats import wilson_interval

logger = logging.getLogger(__name__)

CSV_HEADER = ["p", "trials", "logical_errors", "ler", "ci_lo", "ci_hi"]
FAILURES = (ResidualClass.LOGICAL, ResidualClass.SYNDROME_MISMATCH)
TRIAL_DOMAIN = 0
ACCOUNTINGS = ("component", "joint")


@dataclass(frozen=True)
class StopRule:
    target_errors: int = settings.TARGET_ERRORS
    max_trials: int = settings.MAX_TRIALS

    def __post_init__(self):
        if self.target_errors < 1:
            raise SpecValidationError(f"target_errors must be positive, got {self.target_errors}")
        if self.max_trials < 0:
            raise SpecValidationError(f"max_trials must be non-negative, got {self.max_trials}")


@dataclass(frozen=True)
class BatchOutcome:
    """Per-trial failure flags of trials ``start .. start + len(x_fail) - 1``."""

    start: int
    x_fail: np.ndarray
    z_fail: np.ndarray

    @property
    def joint(self) -> np.ndarray:
        return self.x_fail | self.z_fail

    def failures(self, accounting: str) -> np.ndarray:
        return self.x_fail if accounting == "component" else self.joint


def sample_trials(ch: ChannelModel, n: int, seed: int, start: int, count: int):
    """(e_x, e_z) arrays of shape (count, n) for trials start..start+count-1."""
    draws = np.stack([stream(seed, start + i, TRIAL_DOMAIN).random(n) for i in range(count)])
    return sample_components(ch.p, draws)


def component_failures(code: CssCode, decoder: MinSumDecoder, errors: np.ndarray) -> np.ndarray:
    """Decode each row of ``errors`` from its syndrome; True where the residual fails."""
    packed = pack_bits(errors)
    syndromes = mat_vec_many(code.h, packed)
    estimates, _, _ = decoder.decode_batch(syndromes)
    verdicts = classify_many(code, packed ^ pack_bits(estimates))
    return np.array([v in FAILURES for v in verdicts], dtype=bool)


def simulate_batch(code: CssCode, decoder: MinSumDecoder, ch: ChannelModel, seed: int,
                   start: int, count: int) -> BatchOutcome:
    e_x, e_z = sample_trials(ch, code.n, seed, start, count)
    return BatchOutcome(
        start=start,
        x_fail=component_failures(code, decoder, e_x),
        z_fail=component_failures(code, decoder, e_z),
    )


def run_point(
    code: CssCode,
    ch: ChannelModel,
    cfg: DecoderConfig,
    stop: Optional[StopRule] = None,
    seed: Optional[int] = None,
    workers: int = 1,
    batch_size: int = settings.BATCH_SIZE,
    progress: bool = False,
    accounting: str = settings.SIM_ACCOUNTING,
) -> SimResult:
    """Estimate the logical error rate at one depolarizing probability.

    The stopping rule counts failures under ``accounting``; the other tally is reported too.
    """
    stop = stop or StopRule()
    seed = resolve_seed(seed)
    if accounting not in ACCOUNTINGS:
        raise SpecValidationError(f"accounting must be one of {ACCOUNTINGS}, got {accounting!r}")
    if batch_size < 1:
        raise SpecValidationError(f"batch_size must be positive, got {batch_size}")

    trials = errors = x_failures = z_failures = joint_errors = 0
    stopped_by = "max_trials"
    if ch.p == 0.0:
        # every sampled error is zero and decodes trivially
        trials = stop.max_trials
    else:
        decoder = MinSumDecoder(code.h, cfg)
        starts = list(range(0, stop.max_trials, batch_size))
        window = max(1, workers)
        bar = tqdm(total=stop.target_errors, desc=f"p={ch.p:g}", unit="err", disable=not progress)
        with ThreadPoolExecutor(max_workers=window) as executor:
            for offset in range(0, len(starts), window):
                futures = [
                    executor.submit(simulate_batch, code, decoder, ch, seed, s, min(batch_size, stop.max_trials - s))
                    for s in starts[offset:offset + window]
                ]
                outcomes = [f.result() for f in futures]
                done = False
                for outcome in outcomes:
                    counted = outcome.failures(accounting)
                    cumulative = errors + np.cumsum(counted)
                    hit = np.flatnonzero(cumulative >= stop.target_errors)
                    used = int(hit[0]) + 1 if hit.size else counted.size
                    trials += used
                    errors += int(counted[:used].sum())
                    joint_errors += int(outcome.joint[:used].sum())
                    x_failures += int(outcome.x_fail[:used].sum())
                    z_failures += int(outcome.z_fail[:used].sum())
                    bar.update(int(counted[:used].sum()))
                    logger.debug("p=%g batch at %d: %d trials, %d errors so far", ch.p, outcome.start, trials, errors)
                    if hit.size:
                        stopped_by = "target_errors"
                        done = True
                        break
                if done:
                    break
        bar.close()

    if stopped_by == "max_trials":
        logger.warning("p=%g stopped at max_trials=%d with %d logical errors", ch.p, stop.max_trials, errors)
    ler = errors / trials if trials else 0.0
    ci_lo, ci_hi = wilson_interval(errors, trials)
    logger.info("%s p=%g: %d/%d logical errors, LER=%.4g [%.4g, %.4g]",
                code.code_id, ch.p, errors, trials, ler, ci_lo, ci_hi)
    return SimResult(
        p=ch.p,
        trials=trials,
        logical_errors=errors,
        ler=ler,
        ci_lo=ci_lo,
        ci_hi=ci_hi,
        x_failures=x_failures,
        z_failures=z_failures,
        joint_errors=joint_errors,
        joint_ler=joint_errors / trials if trials else 0.0,
        stopped_by=stopped_by,
        accounting=accounting,
        seed=seed,
        code_id=code.code_id,
        decoder=cfg.snapshot(),
    )


def run_sweep(
    code: CssCode,
    p_grid: Sequence[float],
    stop: Optional[StopRule] = None,
    seed: Optional[int] = None,
    max_iterations: int = settings.BP_MAX_ITERATIONS,
    normalization: float = settings.BP_NORMALIZATION,
    workers: int = 1,
    progress: bool = False,
    out: Optional[Path] = None,
    fmt: str = "csv",
    accounting: str = settings.SIM_ACCOUNTING,
) -> List[SimResult]:
    """One :func:`run_point` per p, all under the same seed; optionally written to ``out``."""
    if fmt not in ("csv", "json"):
        raise SpecValidationError(f"output format must be csv or json, got {fmt!r}")
    results = []
    for p in p_grid:
        cfg = DecoderConfig.for_depolarizing(p, max_iterations=max_iterations, normalization=normalization)
        results.append(run_point(code, ChannelModel(p), cfg, stop, seed, workers=workers, progress=progress,
                                 accounting=accounting))
    if out is not None:
        if fmt == "csv":
            FileService.save_csv(out, CSV_HEADER, [r.csv_row() for r in results])
        else:
            FileService.save_json(out, [r.model_dump(mode="json") for r in results])
        logger.info("wrote %d points to %s", len(results), out)
    return results
