"""Holevo Cramer-Rao bound for the weighted error ``2 w e_a + 2 (1 - w) e_b``
and its comparison with the tradeoff boundary."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .numerics import DEFAULT_TOL, Tolerances, minimize_scalar
from .tradeoff import QCRB, ErrorPoint, boundary_arrays, endpoint_error

POLE_EPS = 1e-6
N_GRID = 4096


@dataclass(frozen=True)
class HolevoResult:
    sigma: float
    phi_star: float
    weight: float
    mu: float


def holevo_objective(phi, w, mu):
    """Weighted secant-squared objective, +inf within ``POLE_EPS`` of a pole."""
    return kernels.holevo_objective(np.atleast_1d(phi), w, math.asin(mu), POLE_EPS)


def hcrb(w: float, mu: float, tol: Tolerances = DEFAULT_TOL, n_grid: int = N_GRID) -> HolevoResult:
    if not 0.0 < w < 1.0:
        raise ValueError(f"weight must lie in (0, 1), got {w}")
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    shift = math.asin(mu)
    # the domain (0, pi] is open at 0; start the scan one step in
    lo = math.pi / n_grid
    phi, sigma = minimize_scalar(
        lambda p: kernels.holevo_objective(p, w, shift, POLE_EPS),
        lo, math.pi, tol, n_grid=n_grid, vectorized=True,
    )
    return HolevoResult(sigma, phi, w, mu)


def hcrb_grid_oracle(w: float, mu: float, n: int = 1_000_000):
    """Brute-force minimum over ``n`` equally spaced phases in (0, pi]."""
    phis = np.linspace(0.0, math.pi, n + 1)[1:]
    vals = kernels.holevo_objective(phis, w, math.asin(mu), POLE_EPS)
    i = int(np.argmin(vals))
    return float(phis[i]), float(vals[i])


def _box_max(mu):
    e = endpoint_error(mu)
    return e if math.isfinite(e) else 10.0


def holevo_line(res: HolevoResult, n: int, e_max: float | None = None) -> list:
    """``n`` points of ``2 w e_a + 2 (1 - w) e_b = sigma`` inside ``[1/2, e_max]^2``."""
    if n < 2:
        raise ValueError("need n >= 2")
    w, sigma = res.weight, res.sigma
    e_max = _box_max(res.mu) if e_max is None else e_max
    e_max = max(e_max, QCRB)
    lo = max(QCRB, (sigma - 2.0 * (1.0 - w) * e_max) / (2.0 * w))
    hi = min(e_max, (sigma - 2.0 * (1.0 - w) * QCRB) / (2.0 * w))
    hi = max(hi, lo)
    pts = []
    for e_a in np.linspace(lo, hi, n):
        e_b = (sigma - 2.0 * w * e_a) / (2.0 * (1.0 - w))
        pts.append(ErrorPoint(float(e_a), max(float(e_b), QCRB)))
    return pts


def tangency_gap(w: float, mu: float, n: int = 10_000, res: HolevoResult | None = None) -> float:
    """Smallest weighted error along the boundary minus the Holevo bound.

    Never below zero when the boundary is a valid region (up to rounding),
    and close to zero when the Holevo line touches it.
    """
    if n < 1000 and mu > 0:
        raise ValueError("tangency needs a dense boundary (n >= 1000)")
    res = hcrb(w, mu) if res is None else res
    e_a, e_b = boundary_arrays(mu, n)
    weighted = 2.0 * w * e_a + 2.0 * (1.0 - w) * e_b
    return float(weighted.min() - res.sigma)
