"""Seedable, chunk-parallel sampling and Monte Carlo entropy estimation.

Reproducibility contract: a batch is split into fixed-size chunks (the
partition depends on the sample count alone, never on worker availability),
each chunk draws from its own counter-based random stream keyed by
(seed, chunk index), and chunk outputs occupy fixed slots of preallocated
arrays.  Serial and thread-pool execution therefore produce bit-identical
results for the same (seed, count).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .model import MixtureModel, log_density

__all__ = ["SampleBatch", "McEstimate", "sample_mixture", "entropy_mc", "derive_seed"]

CHUNK_SIZE = 1 << 16

_LOG2E = np.log2(np.e)
_U64_MAX = (1 << 64) - 1


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= _U64_MAX:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def derive_seed(master: int, *indices: int) -> int:
    """Derive an independent unsigned 64-bit seed from a master seed and indices."""
    ss = np.random.SeedSequence([_check_seed(master), *[int(i) for i in indices]])
    return int(ss.generate_state(1, np.uint64)[0])


def _chunk_bounds(count: int) -> list[tuple[int, int]]:
    """Fixed partition of a batch; a pure function of count."""
    return [(lo, min(lo + CHUNK_SIZE, count)) for lo in range(0, count, CHUNK_SIZE)]


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    key = np.array([seed, chunk_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _run_chunks(tasks, workers: int) -> None:
    if workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(lambda f: f(), tasks))
    else:
        for task in tasks:
            task()


@dataclass(frozen=True, eq=False)
class SampleBatch:
    """Labeled draws from a mixture: points (N, d), generating component per point."""

    points: np.ndarray
    labels: np.ndarray
    seed: int
    count: int


@dataclass(frozen=True)
class McEstimate:
    """A Monte Carlo estimate with its standard error and provenance.

    std_error is the sample standard deviation of the per-sample terms
    divided by sqrt(count).
    """

    value: float
    std_error: float
    count: int
    seed: int


def sample_mixture(
    model: MixtureModel, count: int, seed: int, workers: int = 1
) -> SampleBatch:
    """Draw labeled samples: pick a component by weight, add unit Gaussian noise.

    Deterministic for fixed (seed, count) regardless of `workers`.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    seed = _check_seed(seed)
    dim = model.dim
    cum = np.cumsum(model.weights)
    points = np.empty((count, dim))
    labels = np.empty(count, dtype=np.int64)

    def make_task(ci, lo, hi):
        def task():
            rng = _chunk_rng(seed, ci)
            n = hi - lo
            u = rng.random(n)
            idx = np.minimum(np.searchsorted(cum, u, side="right"), len(cum) - 1)
            noise = rng.standard_normal((n, dim))
            points[lo:hi] = model.means[idx] + noise
            labels[lo:hi] = idx

        return task

    tasks = [make_task(ci, lo, hi) for ci, (lo, hi) in enumerate(_chunk_bounds(count))]
    _run_chunks(tasks, workers)
    return SampleBatch(points=points, labels=labels, seed=seed, count=count)


def entropy_mc(
    model: MixtureModel, count: int, seed: int, workers: int = 1
) -> McEstimate:
    """Monte Carlo differential entropy of the mixture, in bits.

    Averages -log2 f(s_i) over samples s_i drawn from the mixture itself;
    the per-sample spread gives the standard error.
    """
    if count < 2:
        raise ValueError(f"count must be >= 2, got {count}")
    batch = sample_mixture(model, count, seed, workers=workers)
    terms = np.empty(count)

    def make_task(lo, hi):
        def task():
            terms[lo:hi] = -log_density(model, batch.points[lo:hi]) * _LOG2E

        return task

    tasks = [make_task(lo, hi) for lo, hi in _chunk_bounds(count)]
    _run_chunks(tasks, workers)
    value = float(np.mean(terms))
    std_error = float(np.std(terms, ddof=1) / np.sqrt(count))
    return McEstimate(value=value, std_error=std_error, count=count, seed=batch.seed)
