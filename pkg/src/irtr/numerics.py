"""Shared numerical kernels: scalar minimization, bisection, Gaussian sampling,
central finite differences and 2-D midpoint quadrature."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidVariance, NoBracket, NoFiniteValue, NonFiniteIntegrand

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_U64 = 1 << 64


@dataclass(frozen=True)
class Tolerances:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_iter: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


DEFAULT_TOL = Tolerances()


@dataclass
class RngState:
    """Single-owner handle on a SplitMix64 counter stream.

    ``counter`` is the number of 64-bit draws consumed so far. Sampling
    never reuses a draw, so two handles with the same seed and
    counter produce the same values. For parallel work give each worker its
    own seed (``seed + worker_index``) rather than sharing one handle.
    """

    seed: int
    counter: int = 0

    def __post_init__(self):
        if not 0 <= self.seed < _U64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")

    def spawn(self, index: int) -> "RngState":
        return RngState((self.seed + index) % _U64)

    def uniform(self, n: int) -> np.ndarray:
        out = kernels.uniform_block(self.seed, self.counter, n)
        self.counter += n
        return out

    def standard_normal(self, n: int) -> np.ndarray:
        n_pairs = (n + 1) // 2
        out = kernels.normal_block(self.seed, self.counter, n_pairs)
        self.counter += 2 * n_pairs
        return out[:n]


def _masked(values):
    values = np.asarray(values, dtype=float)
    return np.where(np.isfinite(values), values, np.inf)


def _golden(f, a, b, tol, max_iter):
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def minimize_scalar(f, lo, hi, tol=DEFAULT_TOL, n_grid=512, vectorized=False):
    """Global minimum of ``f`` on ``[lo, hi]``: grid scan, then golden section.

    Non-finite evaluations count as +inf, so poles can be masked by returning
    ``inf`` or ``nan``. The golden-section search runs on the two grid cells
    around the best grid point. The returned minimum is never larger than
    the best grid value.

    With ``vectorized=True`` the grid is passed to ``f`` as one array.

    Returns ``(argmin, min)``.
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    n_grid = max(int(n_grid), 512)
    grid = np.linspace(lo, hi, n_grid)
    if vectorized:
        values = _masked(f(grid))
        scalar = lambda x: float(_masked(f(np.array([x])))[0])  # noqa: E731
    else:
        values = _masked([f(x) for x in grid])

        def scalar(x):
            v = f(x)
            return v if math.isfinite(v) else math.inf

    i = int(np.argmin(values))
    if not math.isfinite(values[i]):
        raise NoFiniteValue("objective is non-finite on every grid point")
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, n_grid - 1)]
    x, fx = _golden(scalar, a, b, tol.rel_tol * (hi - lo), tol.max_iter)
    # on a tie keep the grid point: it may be an exact boundary minimum
    if fx < values[i]:
        return float(x), float(fx)
    return float(grid[i]), float(values[i])


def bisect(f, lo, hi, tol=DEFAULT_TOL):
    """Root of ``f`` on a sign-changing bracket ``[lo, hi]``."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return float(lo)
    if fhi == 0:
        return float(hi)
    if flo * fhi > 0:
        raise NoBracket(f"f({lo})={flo} and f({hi})={fhi} share a sign")
    # width halves each step; max_iter only guards against a stuck bracket
    for _ in range(max(tol.max_iter, 1100)):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= tol.abs_tol or (hi - lo) <= tol.abs_tol or mid in (lo, hi):
            return float(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return float(0.5 * (lo + hi))


def sample_gaussian(rng: RngState, mean, variance, size=None):
    """Normal draws with the given mean and variance from ``rng``.

    Returns a float when ``size`` is None, else an array of that length.
    """
    if not variance > 0:
        raise InvalidVariance(f"variance must be positive, got {variance}")
    n = 1 if size is None else int(size)
    z = mean + math.sqrt(variance) * rng.standard_normal(n)
    return float(z[0]) if size is None else z


def finite_diff_gradient(f, x, h=1e-5):
    x = np.asarray(x, dtype=float)
    if not h > 0:
        raise ValueError("h must be positive")
    grad = np.empty_like(x)
    for j in range(x.size):
        e = np.zeros_like(x)
        e[j] = h
        grad[j] = (f(x + e) - f(x - e)) / (2.0 * h)
    return grad


def finite_diff_hessian(f, x, h=1e-4):
    """Central second differences; the off-diagonal stencil uses 4 points."""
    x = np.asarray(x, dtype=float)
    n = x.size
    hess = np.empty((n, n))
    f0 = f(x)
    for j in range(n):
        ej = np.zeros(n)
        ej[j] = h
        hess[j, j] = (f(x + ej) - 2.0 * f0 + f(x - ej)) / h**2
        for k in range(j + 1, n):
            ek = np.zeros(n)
            ek[k] = h
            v = (f(x + ej + ek) - f(x + ej - ek) - f(x - ej + ek) + f(x - ej - ek)) / (4.0 * h * h)
            hess[j, k] = hess[k, j] = v
    return hess


def grid_integrate_2d(f, box, n=256):
    """Composite midpoint rule on ``box = ((lo1, hi1), (lo2, hi2))``.

    ``f(x, y)`` must broadcast over 2-D arrays. Error is O(h**2) for smooth
    integrands (and much smaller for Gaussians deep inside the box).
    """
    n = int(n)
    if n < 64:
        raise ValueError("need at least 64 cells per axis")
    (lo1, hi1), (lo2, hi2) = box
    h1 = (hi1 - lo1) / n
    h2 = (hi2 - lo2) / n
    x = lo1 + h1 * (np.arange(n) + 0.5)
    y = lo2 + h2 * (np.arange(n) + 0.5)
    vals = np.broadcast_to(f(x[:, None], y[None, :]), (n, n))
    if not np.all(np.isfinite(vals)):
        raise NonFiniteIntegrand("integrand is not finite on the grid")
    return float(vals.sum() * h1 * h2)
