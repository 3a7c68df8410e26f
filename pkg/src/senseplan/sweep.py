"""Experiment drivers: line sweep, full-simplex sweep, and input-level scans.

Every sweep evaluates a deterministic grid of allocations; each grid point
gets its own seed derived from the master seed and the point index, so
points are statistically independent while the whole sweep is reproducible
and insensitive to worker count.  Argmax extraction is raw (no smoothing),
with a plateau flag raised when the maximum is ambiguous within one
standard error.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .detection import pd_mc
from .infotheory import mutual_information_vector
from .mc import McEstimate, derive_seed
from .model import Allocation, ChannelParams

__all__ = [
    "SweepPoint",
    "Argmax",
    "SweepResult",
    "ScanPoint",
    "line_sweep",
    "simplex_sweep",
    "param_scan",
    "classify_regime",
    "simplex_lattice",
]

METRICS = ("mi", "pd", "both")

INDIVIDUAL = "individual"
JOINT = "joint"
HYBRID = "hybrid"


def classify_regime(alpha: float, total: float) -> str:
    """Exact endpoint classification of a point on the symmetric line.

    alpha = 0 is individual sensing (T/2, T/2, 0); alpha = total is joint
    sensing (0, 0, T); anything inside is hybrid.  A zero budget counts as
    individual.
    """
    if alpha == 0.0:
        return INDIVIDUAL
    if alpha == total:
        return JOINT
    return HYBRID


@dataclass(frozen=True, eq=False)
class SweepPoint:
    """One evaluated allocation; at least one of mi, pd is present."""

    alloc: Allocation
    mi: McEstimate | None = None
    pd: McEstimate | None = None


@dataclass(frozen=True)
class Argmax:
    """Index of the maximal estimate; plateau marks ambiguity within 1 std error."""

    index: int
    plateau: bool


@dataclass(frozen=True, eq=False)
class SweepResult:
    points: list[SweepPoint]
    argmax_mi: Argmax | None
    argmax_pd: Argmax | None
    config: dict


def _check_metrics(metrics: str) -> tuple[bool, bool]:
    if metrics not in METRICS:
        raise ValueError(f"metrics must be one of {METRICS}, got {metrics!r}")
    return metrics in ("mi", "both"), metrics in ("pd", "both")


def _evaluate_points(params, allocs, count, seed, metrics, workers) -> list[SweepPoint]:
    want_mi, want_pd = _check_metrics(metrics)

    def evaluate(i: int) -> SweepPoint:
        alloc = allocs[i]
        mi = None
        pd = None
        if want_mi:
            res = mutual_information_vector(params, alloc, count, derive_seed(seed, i, 0))
            mi = res.mi_bits
        if want_pd:
            pd = pd_mc(params, alloc, count, derive_seed(seed, i, 1)).pd
        return SweepPoint(alloc=alloc, mi=mi, pd=pd)

    indices = range(len(allocs))
    if workers > 1 and len(allocs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(evaluate, indices))
    return [evaluate(i) for i in indices]


def _argmax(estimates: list[McEstimate] | None) -> Argmax | None:
    if estimates is None:
        return None
    values = np.array([e.value for e in estimates])
    idx = int(np.argmax(values))
    near = np.count_nonzero(values >= values[idx] - estimates[idx].std_error)
    return Argmax(index=idx, plateau=near >= 2)


def _finish(params, allocs, count, seed, metrics, workers, config) -> SweepResult:
    points = _evaluate_points(params, allocs, count, seed, metrics, workers)
    want_mi, want_pd = _check_metrics(metrics)
    argmax_mi = _argmax([p.mi for p in points]) if want_mi else None
    argmax_pd = _argmax([p.pd for p in points]) if want_pd else None
    return SweepResult(points=points, argmax_mi=argmax_mi, argmax_pd=argmax_pd, config=config)


def line_sweep(
    params: ChannelParams,
    steps: int,
    count: int,
    seed: int,
    metrics: str = "both",
    workers: int = 1,
) -> SweepResult:
    """Sweep the symmetric line ((T-a)/2, (T-a)/2, a) over an inclusive alpha grid.

    `steps` equally spaced alpha values cover [0, T] including both
    endpoints, so individual and joint sensing are always evaluated.
    """
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    T = params.total_time
    alphas = np.linspace(0.0, T, steps)
    allocs = [Allocation(0.5 * (T - a), 0.5 * (T - a), a) for a in alphas]
    config = {
        "kind": "line",
        "lambda0": params.lambda0,
        "lambda1": params.lambda1,
        "p": params.prior_p,
        "total": T,
        "steps": steps,
        "samples": count,
        "seed": seed,
        "metric": metrics,
    }
    return _finish(params, allocs, count, seed, metrics, workers, config)


def simplex_lattice(total: float, resolution: int) -> list[Allocation]:
    """Triangular lattice {(i, j, k) * T / resolution : i + j + k = resolution}.

    Ordered by ascending joint-sensing index k, then ascending j, so the
    t3 = 0 edge comes first and the joint-sensing corner last.
    """
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    allocs = []
    for k in range(resolution + 1):
        for j in range(resolution - k + 1):
            i = resolution - k - j
            allocs.append(
                Allocation(i * total / resolution, j * total / resolution, k * total / resolution)
            )
    return allocs


def simplex_sweep(
    params: ChannelParams,
    resolution: int,
    count: int,
    seed: int,
    metrics: str = "both",
    workers: int = 1,
) -> SweepResult:
    """Evaluate the full time simplex on a triangular lattice.

    Exists to audit the assumption that the maximizer lies on the t1 = t2
    line rather than presuppose it.
    """
    allocs = simplex_lattice(params.total_time, resolution)
    config = {
        "kind": "simplex",
        "lambda0": params.lambda0,
        "lambda1": params.lambda1,
        "p": params.prior_p,
        "total": params.total_time,
        "resolution": resolution,
        "samples": count,
        "seed": seed,
        "metric": metrics,
    }
    return _finish(params, allocs, count, seed, metrics, workers, config)


@dataclass(frozen=True)
class ScanPoint:
    """Best value and maximizing joint-sensing time for one input-level pair."""

    lambda0: float
    lambda1: float
    opt_value: float
    opt_se: float
    opt_t3: float
    regime: str
    plateau: bool


def param_scan(
    lambda0_range: tuple[float, float],
    lambda1_range: tuple[float, float],
    grid_n: int,
    p: float,
    total: float,
    steps: int,
    count: int,
    seed: int,
    metric: str = "mi",
    workers: int = 1,
) -> list[ScanPoint]:
    """Line-sweep optimum per (lambda0, lambda1) grid cell with lambda1 > lambda0.

    Cells violating lambda1 > lambda0 are skipped.  `metric` selects which
    single objective is optimized ('mi' or 'pd').
    """
    if metric not in ("mi", "pd"):
        raise ValueError(f"scan metric must be 'mi' or 'pd', got {metric!r}")
    if grid_n < 1:
        raise ValueError(f"grid_n must be >= 1, got {grid_n}")
    lam0s = np.linspace(lambda0_range[0], lambda0_range[1], grid_n)
    lam1s = np.linspace(lambda1_range[0], lambda1_range[1], grid_n)

    cells = []
    for i, lam0 in enumerate(lam0s):
        for j, lam1 in enumerate(lam1s):
            if lam1 > lam0:
                cells.append((i * grid_n + j, float(lam0), float(lam1)))

    def scan_cell(cell) -> ScanPoint:
        flat, lam0, lam1 = cell
        cell_params = ChannelParams(lam0, lam1, p, total)
        result = line_sweep(
            cell_params, steps, count, derive_seed(seed, flat), metrics=metric, workers=1
        )
        argmax = result.argmax_mi if metric == "mi" else result.argmax_pd
        best = result.points[argmax.index]
        est = best.mi if metric == "mi" else best.pd
        alpha = best.alloc.t3
        return ScanPoint(
            lambda0=lam0,
            lambda1=lam1,
            opt_value=est.value,
            opt_se=est.std_error,
            opt_t3=alpha,
            regime=classify_regime(alpha, total),
            plateau=argmax.plateau,
        )

    if workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(scan_cell, cells))
    return [scan_cell(c) for c in cells]
