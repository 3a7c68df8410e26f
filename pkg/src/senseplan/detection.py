"""MAP detection of the joint input hypothesis and its empirical success rate.

With identity covariance the posterior comparison reduces exactly to
log(prior_k) - ||y - mu_k||^2 / 2, so decisions never touch the density
normalizer.  The probability of total correct detections Pd is estimated by
labeled sampling; 1 - Pd is the Bayes risk under 0-1 costs.  At t3 = 0 the
problem splits into two independent binary tests with a closed-form answer,
used as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .mc import McEstimate, sample_mixture
from .model import Allocation, ChannelParams, MixtureModel, build_mixture

__all__ = [
    "ConfusionMatrix",
    "PdResult",
    "map_decide",
    "pd_mc",
    "bayes_risk",
    "risk_from_confusion",
    "scalar_map_pd",
    "pd_closed_form_t3zero",
]


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    """counts[i, j] = samples generated under hypothesis i and decided as j."""

    counts: np.ndarray
    total: int


@dataclass(frozen=True, eq=False)
class PdResult:
    """Empirical probability of total correct detections with its confusion matrix."""

    pd: McEstimate
    bayes_risk: float
    confusion: ConfusionMatrix


def _map_scores(model: MixtureModel, points: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        logw = np.log(model.weights)
    diff = points[:, None, :] - model.means[None, :, :]
    return logw[None, :] - 0.5 * np.einsum("nkd,nkd->nk", diff, diff)


def _decide(model: MixtureModel, points: np.ndarray) -> np.ndarray:
    # argmax takes the first maximum, which is the lowest hypothesis index
    return np.argmax(_map_scores(model, points), axis=1)


def map_decide(model: MixtureModel, y) -> int:
    """Index of the posterior-maximizing hypothesis; ties go to the lowest index."""
    pts = np.atleast_2d(np.asarray(y, dtype=float))
    return int(_decide(model, pts)[0])


def pd_mc(
    params: ChannelParams, alloc: Allocation, count: int, seed: int, workers: int = 1
) -> PdResult:
    """Empirical Pd: sample with known labels, MAP-decide each, count matches."""
    if count < 2:
        raise ValueError(f"count must be >= 2, got {count}")
    model = build_mixture(params, alloc)
    batch = sample_mixture(model, count, seed, workers=workers)
    decisions = _decide(model, batch.points)
    k = model.n_components
    counts = np.bincount(batch.labels * k + decisions, minlength=k * k).reshape(k, k)
    correct = int(np.trace(counts))
    pd_val = correct / count
    std_error = math.sqrt(pd_val * (1.0 - pd_val) / count)
    pd = McEstimate(value=pd_val, std_error=std_error, count=count, seed=batch.seed)
    return PdResult(
        pd=pd,
        bayes_risk=1.0 - pd_val,
        confusion=ConfusionMatrix(counts=counts, total=count),
    )


def bayes_risk(
    params: ChannelParams, alloc: Allocation, count: int, seed: int, workers: int = 1
) -> float:
    """Empirical 0-1 Bayes risk, 1 - Pd."""
    return pd_mc(params, alloc, count, seed, workers=workers).bayes_risk


def risk_from_confusion(confusion: ConfusionMatrix, priors=None) -> float:
    """Risk as prior-weighted off-diagonal confusion mass.

    With priors=None the empirical per-hypothesis frequencies weight the
    rows, which reproduces 1 - trace/total exactly; passing the model
    priors instead gives the prior-weighted estimator of the same risk.
    """
    counts = confusion.counts.astype(float)
    row_totals = counts.sum(axis=1)
    if priors is None:
        priors = row_totals / confusion.total
    risk = 0.0
    for i in range(counts.shape[0]):
        if row_totals[i] == 0:
            continue
        wrong = row_totals[i] - counts[i, i]
        risk += priors[i] * wrong / row_totals[i]
    return risk


def scalar_map_pd(params: ChannelParams, t: float) -> float:
    """Closed-form success probability of the binary MAP test on one target.

    Means lambda0*sqrt(t) and lambda1*sqrt(t), unit variance, priors
    (1-p, p).  The decision threshold sits at the midpoint shifted by
    log((1-p)/p) / (mean separation).
    """
    if t < 0.0:
        raise ValueError(f"t must be >= 0, got {t}")
    p = params.prior_p
    if p in (0.0, 1.0):
        return 1.0
    if params.lambda1 == params.lambda0:
        raise ValueError("scalar MAP threshold undefined for lambda0 == lambda1")
    if t == 0.0:
        return max(p, 1.0 - p)
    root = math.sqrt(t)
    m0 = params.lambda0 * root
    m1 = params.lambda1 * root
    tau = 0.5 * (m0 + m1) + math.log((1.0 - p) / p) / (m1 - m0)
    return float((1.0 - p) * ndtr(tau - m0) + p * (1.0 - ndtr(tau - m1)))


def pd_closed_form_t3zero(params: ChannelParams, t1: float, t2: float) -> float:
    """Exact Pd at t3 = 0: two independent binary tests, both must be correct."""
    return scalar_map_pd(params, t1) * scalar_map_pd(params, t2)
