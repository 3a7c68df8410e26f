"""Mutual information between the targets and the observations.

I(X; Y) = H(Y) - H(Y|X) in bits.  H(Y|X) is closed form (each conditional is
a unit-variance Gaussian), so only the mixture entropy H(Y) needs Monte
Carlo; its standard error carries over to the mutual information unchanged.
A deterministic trapezoid oracle validates the Monte Carlo path in one
dimension, and a runtime-bounded three-dimensional variant covers small
time budgets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mc import McEstimate, entropy_mc
from .model import (
    Allocation,
    ChannelParams,
    MixtureModel,
    build_mixture,
    check_allocation,
    input_symbols,
    log_density,
)

__all__ = [
    "MiResult",
    "conditional_entropy_bits",
    "input_entropy_bits",
    "mutual_information_vector",
    "mutual_information_scalar",
    "scalar_mixture",
    "entropy_quadrature_1d",
    "entropy_quadrature_3d",
    "normalization_quadrature_3d",
]

# runtime guards for the 3-D trapezoid oracle
_QUAD3D_MAX_TOTAL_TIME = 4.0
_QUAD3D_MIN_STEP = 0.05


@dataclass(frozen=True)
class MiResult:
    """Mutual information estimate split into its entropy terms (all in bits)."""

    mi_bits: McEstimate
    h_y_bits: McEstimate
    h_y_given_x_bits: float


def conditional_entropy_bits(dimensions: int) -> float:
    """H(Y|X) for k unit-variance Gaussian outputs: 0.5 * k * log2(2 pi e).

    The four hypotheses share the same conditional entropy and the priors
    sum to one, so the prior weighting collapses.
    """
    if dimensions <= 0:
        raise ValueError(f"dimensions must be >= 1, got {dimensions}")
    return 0.5 * dimensions * math.log2(2.0 * math.pi * math.e)


def input_entropy_bits(params: ChannelParams) -> float:
    """Entropy of the four-hypothesis input, the upper bound on I(X; Y)."""
    priors = np.array([s.prior for s in input_symbols(params)])
    nz = priors[priors > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def mutual_information_vector(
    params: ChannelParams, alloc: Allocation, count: int, seed: int, workers: int = 1
) -> MiResult:
    """I(X1, X2; Y1, Y2, Y3) for one allocation, via mixture-entropy Monte Carlo."""
    model = build_mixture(params, alloc)
    h_y = entropy_mc(model, count, seed, workers=workers)
    h_cond = conditional_entropy_bits(3)
    mi = McEstimate(
        value=h_y.value - h_cond,
        std_error=h_y.std_error,
        count=h_y.count,
        seed=h_y.seed,
    )
    return MiResult(mi_bits=mi, h_y_bits=h_y, h_y_given_x_bits=h_cond)


def scalar_mixture(params: ChannelParams, t: float) -> MixtureModel:
    """Marginal of the single-target observation Y1 = sqrt(t) * X1 + N."""
    if t < 0.0:
        raise ValueError(f"t must be >= 0, got {t}")
    root = math.sqrt(t)
    p = params.prior_p
    return MixtureModel(
        weights=np.array([1.0 - p, p]),
        means=np.array([[params.lambda0 * root], [params.lambda1 * root]]),
    )


def mutual_information_scalar(
    params: ChannelParams, t: float, count: int, seed: int, workers: int = 1
) -> MiResult:
    """I(X1; Y1) for the single-target channel observed for time t."""
    model = scalar_mixture(params, t)
    h_y = entropy_mc(model, count, seed, workers=workers)
    h_cond = conditional_entropy_bits(1)
    mi = McEstimate(
        value=h_y.value - h_cond,
        std_error=h_y.std_error,
        count=h_y.count,
        seed=h_y.seed,
    )
    return MiResult(mi_bits=mi, h_y_bits=h_y, h_y_given_x_bits=h_cond)


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    n = int(round((hi - lo) / step)) + 1
    return lo + step * np.arange(n)


def entropy_quadrature_1d(
    params: ChannelParams, t: float, grid_step: float = 1e-3, half_width_sigmas: float = 8.0
) -> float:
    """Deterministic trapezoid evaluation of the scalar entropy H(Y1), in bits.

    Integrates -f log2 f over [min mean - w, max mean + w].  Serves as an
    independent oracle for the Monte Carlo scalar path.
    """
    if grid_step <= 0.0:
        raise ValueError(f"grid_step must be > 0, got {grid_step}")
    if half_width_sigmas < 6.0:
        raise ValueError(f"half_width_sigmas must be >= 6, got {half_width_sigmas}")
    model = scalar_mixture(params, t)
    means = model.means[:, 0]
    y = _grid(means.min() - half_width_sigmas, means.max() + half_width_sigmas, grid_step)
    logf = log_density(model, y[:, None])
    if not np.all(np.isfinite(logf)):
        raise FloatingPointError("non-finite integrand in entropy quadrature")
    integrand = -np.exp(logf) * logf / math.log(2.0)
    return float(np.trapezoid(integrand, y))


def _quad3d_axes(model: MixtureModel, grid_step: float, half_width_sigmas: float):
    axes = []
    for d in range(3):
        mu = model.means[:, d]
        axes.append(_grid(mu.min() - half_width_sigmas, mu.max() + half_width_sigmas, grid_step))
    return axes


def _quad3d_integrate(model, grid_step, half_width_sigmas, f_of_logf):
    """Slice-wise tensor trapezoid of f_of_logf(log f) against the true log density."""
    if grid_step < _QUAD3D_MIN_STEP:
        raise ValueError(f"grid_step must be >= {_QUAD3D_MIN_STEP} for the 3-D oracle")
    ax1, ax2, ax3 = _quad3d_axes(model, grid_step, half_width_sigmas)
    w2 = np.full(len(ax2), grid_step)
    w2[[0, -1]] *= 0.5
    w3 = np.full(len(ax3), grid_step)
    w3[[0, -1]] *= 0.5
    plane_w = np.outer(w2, w3).ravel()
    g2, g3 = np.meshgrid(ax2, ax3, indexing="ij")
    slice_pts = np.column_stack([np.empty(g2.size), g2.ravel(), g3.ravel()])
    total = 0.0
    for i, y1 in enumerate(ax1):
        slice_pts[:, 0] = y1
        logf = log_density(model, slice_pts)
        w1 = grid_step if 0 < i < len(ax1) - 1 else 0.5 * grid_step
        total += w1 * float(np.dot(plane_w, f_of_logf(logf)))
    return total


def entropy_quadrature_3d(
    params: ChannelParams,
    alloc: Allocation,
    grid_step: float = 0.1,
    half_width_sigmas: float = 8.0,
) -> float:
    """Trapezoid H(Y) in bits over a truncated box; restricted to small budgets.

    Only valid for total_time <= 4 and grid_step >= 0.05: the box grows with
    the component spread and the cost is cubic in its side length.
    """
    if params.total_time > _QUAD3D_MAX_TOTAL_TIME:
        raise ValueError(
            f"3-D quadrature restricted to total_time <= {_QUAD3D_MAX_TOTAL_TIME}"
        )
    check_allocation(params, alloc)
    model = build_mixture(params, alloc)

    def neg_f_log2f(logf):
        return -np.exp(logf) * logf / math.log(2.0)

    return _quad3d_integrate(model, grid_step, half_width_sigmas, neg_f_log2f)


def normalization_quadrature_3d(
    model: MixtureModel, grid_step: float = 0.1, half_width_sigmas: float = 8.0
) -> float:
    """Trapezoid integral of exp(log_density) over the truncated box (should be 1)."""
    if model.dim != 3:
        raise ValueError("normalization oracle requires a trivariate mixture")
    return _quad3d_integrate(model, grid_step, half_width_sigmas, np.exp)
