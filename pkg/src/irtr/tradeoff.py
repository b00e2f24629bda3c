"""Information-regret tradeoff and the attainable-error boundary it implies.

Error variances ``e_a``, ``e_b`` are in rescaled units, where each parameter
on its own can reach ``1/2``. Writing ``a = 1 - 1/(2 e_a)`` and
``b = 1 - 1/(2 e_b)`` for the squared regrets, the relation reads

    a + b + 2 sqrt(1 - mu^2) sqrt(a b) >= mu^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidErrorPoint

QCRB = 0.5
SLACK = 1e-12
POINT_SLACK = 1e-9


@dataclass(frozen=True)
class ErrorPoint:
    e_a: float
    e_b: float

    def __post_init__(self):
        if not (self.e_a >= QCRB - POINT_SLACK and self.e_b >= QCRB - POINT_SLACK):
            raise InvalidErrorPoint(f"variances must be >= 1/2, got ({self.e_a}, {self.e_b})")


@dataclass(frozen=True)
class BoundaryCurve:
    mu: float
    points: tuple

    @property
    def e_a(self) -> np.ndarray:
        return np.array([p.e_a for p in self.points])

    @property
    def e_b(self) -> np.ndarray:
        return np.array([p.e_b for p in self.points])


def irtr_lhs(d1, d2, c):
    return d1 * d1 + d2 * d2 + 2.0 * math.sqrt(max(0.0, 1.0 - c * c)) * d1 * d2


def _regret_sq(e):
    return max(0.0, 1.0 - 1.0 / (2.0 * e))


def error_lhs(e_a, e_b, mu, cross_sign=1.0):
    """Left side of the error-space relation at ``(e_a, e_b)``.

    ``cross_sign`` exists only so the verification harness can inject a
    deliberate fault; library callers leave it at 1.
    """
    a, b = _regret_sq(e_a), _regret_sq(e_b)
    return a + b + cross_sign * 2.0 * math.sqrt(max(0.0, 1.0 - mu * mu)) * math.sqrt(a * b)


def feasible(pt: ErrorPoint, mu: float) -> bool:
    if pt.e_a < QCRB - POINT_SLACK or pt.e_b < QCRB - POINT_SLACK:
        raise InvalidErrorPoint(f"variances must be >= 1/2, got ({pt.e_a}, {pt.e_b})")
    return error_lhs(pt.e_a, pt.e_b, mu) >= mu * mu - SLACK


def _variance_from_regret_sq(r):
    return QCRB / (1.0 - r) if r < 1.0 else math.inf


def _boundary_b(a, mu):
    """Squared regret of B on the boundary given that of A (both in [0, 1])."""
    if a >= mu * mu:
        return 0.0
    root = mu * math.sqrt(1.0 - a) - math.sqrt((1.0 - mu * mu) * a)
    return root * root


def boundary_eb(e_a: float, mu: float) -> float:
    """Smallest attainable ``e_b`` given ``e_a``.

    Solving the relation as a quadratic in ``sqrt(b)`` gives
    ``sqrt(b) = mu sqrt(1 - a) - sqrt((1 - mu^2) a)`` while ``a < mu^2``;
    past that ``e_a`` is sacrificed enough that ``e_b`` reaches 1/2.
    """
    if e_a < QCRB - POINT_SLACK:
        raise InvalidErrorPoint(f"e_a must be >= 1/2, got {e_a}")
    return _variance_from_regret_sq(_boundary_b(_regret_sq(e_a), mu))


def endpoint_error(mu: float) -> float:
    """Largest error on the curve, ``1 / (2 (1 - mu^2))``."""
    return _variance_from_regret_sq(mu * mu)


def equal_weight_error(mu: float) -> float:
    """Common variance at the symmetric point ``e_a == e_b`` of the boundary."""
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    a = mu * mu / (2.0 * (1.0 + math.sqrt(1.0 - mu * mu)))
    return _variance_from_regret_sq(a)


def boundary_curve(mu: float, n: int) -> BoundaryCurve:
    """``n`` boundary points, uniform in the squared regret of A on [0, mu^2].

    At ``mu == 0`` the curve is the single point (1/2, 1/2). At ``mu == 1``
    the two endpoints lie at infinity and are dropped.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if mu == 0.0:
        return BoundaryCurve(0.0, (ErrorPoint(QCRB, QCRB),))
    pts = []
    for a in np.linspace(0.0, mu * mu, n):
        e_a = _variance_from_regret_sq(float(a))
        e_b = _variance_from_regret_sq(_boundary_b(float(a), mu))
        if math.isfinite(e_a) and math.isfinite(e_b):
            pts.append(ErrorPoint(e_a, e_b))
    return BoundaryCurve(mu, tuple(pts))


def boundary_arrays(mu: float, n: int):
    """Vectorized ``(e_a, e_b)`` arrays of :func:`boundary_curve`."""
    if mu == 0.0:
        return np.array([QCRB]), np.array([QCRB])
    a = np.linspace(0.0, mu * mu, n)
    root = np.clip(mu * np.sqrt(1.0 - a) - np.sqrt((1.0 - mu * mu) * a), 0.0, None)
    b = root * root
    with np.errstate(divide="ignore"):
        e_a = QCRB / (1.0 - a)
        e_b = QCRB / (1.0 - b)
    keep = np.isfinite(e_a) & np.isfinite(e_b)
    return e_a[keep], e_b[keep]
