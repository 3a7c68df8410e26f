"""Observation model for two-target sensing on a vector Gaussian channel.

Two binary targets X1, X2 take the levels lambda0 or lambda1 independently
with P(lambda1) = p.  Three unit-variance Gaussian observations are collected:
Y1 sees X1 alone for time t1, Y2 sees X2 alone for time t2, and Y3 sees the
sum X1+X2 for time t3, with sqrt-of-time gain on the means.  The time budget
t1 + t2 + t3 = T is fixed.  The marginal of Y = (Y1, Y2, Y3) is therefore a
four-component Gaussian mixture with identity covariance, one component per
joint hypothesis on (X1, X2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

__all__ = [
    "ChannelParams",
    "Allocation",
    "InputSymbol",
    "ScalingMatrix",
    "MixtureModel",
    "build_scaling_matrix",
    "input_symbols",
    "conditional_mean",
    "build_mixture",
    "log_density",
    "check_allocation",
]

# |t1 + t2 + t3 - T| tolerance when validating an allocation against an instance
ALLOCATION_SUM_TOL = 1e-9

_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class ChannelParams:
    """Problem instance: input levels, prior, and total time budget.

    lambda0, lambda1 are the low/high input levels (lambda0 <= lambda1 is
    enforced; equality is allowed and gives a zero-information channel).
    prior_p is the probability that a single target sits at lambda1.
    """

    lambda0: float
    lambda1: float
    prior_p: float
    total_time: float

    def __post_init__(self):
        if not 0.0 <= self.prior_p <= 1.0:
            raise ValueError(f"prior_p must be in [0, 1], got {self.prior_p}")
        if self.total_time < 0.0:
            raise ValueError(f"total_time must be >= 0, got {self.total_time}")
        if self.lambda0 > self.lambda1:
            raise ValueError(
                f"lambda0 <= lambda1 required, got ({self.lambda0}, {self.lambda1})"
            )


@dataclass(frozen=True)
class Allocation:
    """A point (t1, t2, t3) on the time simplex."""

    t1: float
    t2: float
    t3: float

    def __post_init__(self):
        for name in ("t1", "t2", "t3"):
            v = getattr(self, name)
            if not (v >= 0.0):
                raise ValueError(f"allocation component {name} must be >= 0, got {v}")

    @property
    def total(self) -> float:
        return self.t1 + self.t2 + self.t3

    def swapped(self) -> "Allocation":
        """The allocation with the two individual sensing times exchanged."""
        return Allocation(self.t2, self.t1, self.t3)


def check_allocation(params: ChannelParams, alloc: Allocation) -> None:
    """Validate that an allocation exhausts the instance's time budget."""
    if abs(alloc.total - params.total_time) > ALLOCATION_SUM_TOL:
        raise ValueError(
            f"allocation sums to {alloc.total}, expected total_time "
            f"{params.total_time} within {ALLOCATION_SUM_TOL}"
        )


@dataclass(frozen=True)
class InputSymbol:
    """One joint hypothesis on (X1, X2) with its prior probability.

    hypothesis_index enumerates (low,low), (low,high), (high,low), (high,high)
    as 0..3; the prior is the product form implied by independence.
    """

    x1: float
    x2: float
    hypothesis_index: int
    prior: float


def input_symbols(params: ChannelParams) -> list[InputSymbol]:
    """The four joint input hypotheses in fixed index order, priors summing to 1."""
    lo, hi, p = params.lambda0, params.lambda1, params.prior_p
    q = 1.0 - p
    return [
        InputSymbol(lo, lo, 0, q * q),
        InputSymbol(lo, hi, 1, p * q),
        InputSymbol(hi, lo, 2, p * q),
        InputSymbol(hi, hi, 3, p * p),
    ]


@dataclass(frozen=True, eq=False)
class ScalingMatrix:
    """The 3x2 sqrt-of-time gain matrix mapping (X1, X2) to observation means.

    Structure: [[sqrt(t1), 0], [0, sqrt(t2)], [sqrt(t3), sqrt(t3)]].
    """

    rows: np.ndarray


def build_scaling_matrix(alloc: Allocation) -> ScalingMatrix:
    """Gain matrix for an allocation; structural zeros and a tied bottom row."""
    r1 = math.sqrt(alloc.t1)
    r2 = math.sqrt(alloc.t2)
    r3 = math.sqrt(alloc.t3)
    rows = np.array([[r1, 0.0], [0.0, r2], [r3, r3]])
    return ScalingMatrix(rows)


def conditional_mean(alloc: Allocation, symbol: InputSymbol) -> np.ndarray:
    """Mean of Y given the input symbol: (sqrt(t1)*x1, sqrt(t2)*x2, sqrt(t3)*(x1+x2))."""
    return np.array(
        [
            math.sqrt(alloc.t1) * symbol.x1,
            math.sqrt(alloc.t2) * symbol.x2,
            math.sqrt(alloc.t3) * (symbol.x1 + symbol.x2),
        ]
    )


@dataclass(frozen=True, eq=False)
class MixtureModel:
    """Gaussian mixture with identity covariance: weights (K,), means (K, d).

    The covariance is never stored; every component is a unit-variance
    spherical Gaussian.  The channel marginal of Y is the K=4, d=3 case
    produced by :func:`build_mixture`.
    """

    weights: np.ndarray
    means: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        m = np.asarray(self.means, dtype=float)
        if m.ndim != 2 or w.ndim != 1 or w.shape[0] != m.shape[0]:
            raise ValueError(f"inconsistent mixture shapes {w.shape}, {m.shape}")
        if np.any(w < 0.0):
            raise ValueError("mixture weights must be nonnegative")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"mixture weights sum to {w.sum()}, expected 1")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "means", m)

    @property
    def n_components(self) -> int:
        return self.weights.shape[0]

    @property
    def dim(self) -> int:
        return self.means.shape[1]


def build_mixture(params: ChannelParams, alloc: Allocation) -> MixtureModel:
    """Marginal of Y: four components pairing hypothesis priors with their means."""
    check_allocation(params, alloc)
    symbols = input_symbols(params)
    weights = np.array([s.prior for s in symbols])
    means = np.stack([conditional_mean(alloc, s) for s in symbols])
    return MixtureModel(weights, means)


def component_log_densities(model: MixtureModel, points: np.ndarray) -> np.ndarray:
    """Per-component log densities at `points` (N, d); returns (N, K).

    Identity covariance, so each entry is -||y - mu_k||^2 / 2 - (d/2) log(2 pi).
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    diff = pts[:, None, :] - model.means[None, :, :]
    sq = np.einsum("nkd,nkd->nk", diff, diff)
    return -0.5 * sq - 0.5 * model.dim * _LOG_2PI


def log_density(model: MixtureModel, y) -> float | np.ndarray:
    """Natural log of the mixture density, stable for widely separated components.

    Accepts a single d-vector or an (N, d) array.  Evaluated with the
    max-shift (log-sum-exp) scheme so the result stays finite even when
    every component sits far from y.
    """
    if not np.any(model.weights > 0.0):
        raise ValueError("mixture has no positive weight")
    y_arr = np.asarray(y, dtype=float)
    single = y_arr.ndim == 1
    comp = component_log_densities(model, y_arr)
    out = logsumexp(comp, axis=1, b=model.weights[None, :])
    return float(out[0]) if single else out
