"""Singular values of the sqrt-of-time gain matrix.

The 3x2 matrix has rank at most 2, so the third singular value is
structurally zero.  A closed radical expression and an independent 2x2
Gram eigen-solve give the two nonzero values; their squares are affine in
the joint-sensing time along the symmetric allocation line, which is what
makes the information curve concave there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Allocation

__all__ = [
    "SingularValues",
    "singular_values_formula",
    "singular_values_numeric",
    "THIRD_SINGULAR_VALUE",
]

# rank of the 3x2 gain matrix is at most 2
THIRD_SINGULAR_VALUE = 0.0

# roundoff budget when a radicand that is nonnegative in exact arithmetic
# lands slightly below zero in floats
_RADICAND_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class SingularValues:
    """The two leading singular values, descending."""

    sigma: np.ndarray


def _clip_radicand(value: float, scale: float) -> float:
    if value < 0.0:
        if value < -_RADICAND_SLACK * max(scale, 1.0):
            raise FloatingPointError(f"negative radicand {value}")
        return 0.0
    return value


def singular_values_formula(alloc: Allocation) -> SingularValues:
    """Closed radical form: sqrt((t1 + t2 + 2 t3 +/- sqrt((t1-t2)^2 + 4 t3^2)) / 2)."""
    t1, t2, t3 = alloc.t1, alloc.t2, alloc.t3
    s = t1 + t2 + 2.0 * t3
    r = math.sqrt((t1 - t2) ** 2 + 4.0 * t3 * t3)
    hi = math.sqrt(_clip_radicand((s + r) / 2.0, s))
    lo = math.sqrt(_clip_radicand((s - r) / 2.0, s))
    return SingularValues(sigma=np.array([hi, lo]))


def singular_values_numeric(alloc: Allocation) -> SingularValues:
    """Independent route: quadratic-formula eigenvalues of the 2x2 Gram matrix."""
    t1, t2, t3 = alloc.t1, alloc.t2, alloc.t3
    # Gram matrix [[t1 + t3, t3], [t3, t2 + t3]]
    trace = t1 + t2 + 2.0 * t3
    det = (t1 + t3) * (t2 + t3) - t3 * t3
    disc = math.sqrt(_clip_radicand(trace * trace - 4.0 * det, trace * trace))
    hi = math.sqrt(_clip_radicand(0.5 * (trace + disc), trace))
    lo = math.sqrt(_clip_radicand(0.5 * (trace - disc), trace))
    return SingularValues(sigma=np.array([hi, lo]))
