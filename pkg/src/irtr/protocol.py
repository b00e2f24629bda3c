"""The phase-tunable joint measurement of (A', B').

The measured observables are ``X1 - T P2`` and ``-S P1 + C X2`` with

    D(phi) = sqrt(1 - mu^2) cos(phi) - mu sin(phi)
    C = cos(phi) / D,   S = sin(phi) / D,   T = S / C = tan(phi).

Their outcomes (xi, eta) are independent Gaussians centred on (A', B') with
variances (1 + T^2)/2 and 1/(2 D^2), so the classical Fisher information is
``2 diag(cos^2 phi, D^2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DenominatorZero, InsufficientSamples, ZeroInformation
from .numerics import RngState, finite_diff_hessian, grid_integrate_2d
from .quantum_info import FisherMatrix
from .tradeoff import ErrorPoint

DENOM_EPS = 1e-12
CONDITION_SLACK = 1e-12
INFO_EPS = 1e-15


@dataclass(frozen=True)
class MeasurementPhase:
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.phi <= math.pi:
            raise ValueError(f"phase must lie in [0, pi], got {self.phi}")


@dataclass(frozen=True)
class ProtocolCoeffs:
    c_coef: float
    s_coef: float
    t_coef: float


@dataclass(frozen=True)
class OutcomeSample:
    xi: float
    eta: float


@dataclass(frozen=True)
class OutcomeDistribution:
    mean_xi: float
    var_xi: float
    mean_eta: float
    var_eta: float

    def logpdf(self, xi, eta):
        return (
            -0.5 * (xi - self.mean_xi) ** 2 / self.var_xi
            - 0.5 * (eta - self.mean_eta) ** 2 / self.var_eta
            - 0.5 * math.log(4.0 * math.pi**2 * self.var_xi * self.var_eta)
        )

    def pdf(self, xi, eta):
        return np.exp(self.logpdf(xi, eta))

    def box(self, width=12.0):
        """Integration box of ``width`` standard deviations each side."""
        sx, se = math.sqrt(self.var_xi), math.sqrt(self.var_eta)
        return (
            (self.mean_xi - width * sx, self.mean_xi + width * sx),
            (self.mean_eta - width * se, self.mean_eta + width * se),
        )


def _phi(phi):
    return phi.phi if isinstance(phi, MeasurementPhase) else float(phi)


def denominator(phi, mu):
    phi = _phi(phi)
    return math.sqrt(1.0 - mu * mu) * math.cos(phi) - mu * math.sin(phi)


def coeffs(phi, mu) -> ProtocolCoeffs:
    phi = _phi(phi)
    d = denominator(phi, mu)
    if abs(d) <= DENOM_EPS:
        raise DenominatorZero(f"measurement degenerates at phi={phi}, mu={mu}")
    return ProtocolCoeffs(math.cos(phi) / d, math.sin(phi) / d, math.tan(phi))


def analytic_cfim(phi, mu) -> FisherMatrix:
    phi = _phi(phi)
    return FisherMatrix(2.0 * math.cos(phi) ** 2, 0.0, 2.0 * denominator(phi, mu) ** 2)


def outcome_distribution(phi, mu, sig) -> OutcomeDistribution:
    """Reduced independent-Gaussian form of the outcome density.

    The mean of eta is ``(C sqrt(1 - mu^2) - S mu) B'``, and that prefactor
    is identically 1. Unlike the raw product form, this one stays regular at
    S = 0 or T = 0.
    """
    c = coeffs(phi, mu)
    d = denominator(phi, mu)
    return OutcomeDistribution(
        sig.a_resc,
        0.5 * (1.0 + c.t_coef**2),
        (c.c_coef * math.sqrt(1.0 - mu * mu) - c.s_coef * mu) * sig.b_resc,
        0.5 / (d * d),
    )


def raw_logpdf(xi, eta, phi, mu, a_resc, b_resc):
    """Log of the outcome density in its unreduced product form.

    Broadcasts over array outcomes. Needs S != 0 and T != 0. Used as an independent check on
    :func:`outcome_distribution`.
    """
    c = coeffs(phi, mu)
    s, t = c.s_coef, c.t_coef
    if s == 0.0 or t == 0.0:
        raise DenominatorZero("raw density form is singular where S or T vanishes")
    r = math.sqrt(1.0 - mu * mu)
    num = s * s * (xi - a_resc) ** 2 + (t * eta - s * (r - t * mu) * b_resc) ** 2
    return math.log(abs(t / s) / (math.pi * (1.0 + t * t))) - num / (s * s * (1.0 + t * t))


def raw_score(xi, eta, phi, mu, a_resc, b_resc):
    """Analytic gradient of :func:`raw_logpdf` with respect to (A', B')."""
    c = coeffs(phi, mu)
    s, t = c.s_coef, c.t_coef
    r = math.sqrt(1.0 - mu * mu)
    k = s * (r - t * mu)
    denom = s * s * (1.0 + t * t)
    d_a = 2.0 * s * s * (xi - a_resc) / denom
    d_b = 2.0 * (t * eta - k * b_resc) * k / denom
    return d_a, d_b


def sample_outcomes(dist: OutcomeDistribution, n: int, rng: RngState):
    """``n`` outcome pairs as a ``(n, 2)`` array; xi and eta use separate draws.

    Use :func:`as_samples` for a list of :class:`OutcomeSample`.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    z = rng.standard_normal(2 * n)
    out = np.empty((n, 2))
    out[:, 0] = dist.mean_xi + math.sqrt(dist.var_xi) * z[:n]
    out[:, 1] = dist.mean_eta + math.sqrt(dist.var_eta) * z[n:]
    return out


def as_samples(arr):
    return [OutcomeSample(float(x), float(y)) for x, y in np.asarray(arr)]


def mle(samples):
    """Sample-mean estimates and the estimated variance of each mean.

    Accepts an ``(n, 2)`` array or a sequence of :class:`OutcomeSample`.
    Returns ``(a_hat, b_hat, var_a, var_b)``.
    """
    if len(samples) and isinstance(samples[0], OutcomeSample):
        arr = np.array([[s.xi, s.eta] for s in samples])
    else:
        arr = np.asarray(samples, dtype=float).reshape(-1, 2)
    n = arr.shape[0]
    if n < 2:
        raise InsufficientSamples("need at least 2 samples")
    mean = arr.mean(axis=0)
    var = arr.var(axis=0, ddof=1) / n
    return float(mean[0]), float(mean[1]), float(var[0]), float(var[1])


def saturation_condition(phi, mu) -> bool:
    """True where the measurement turns the tradeoff into an equality.

    ``mu cos(phi) + sqrt(1 - mu^2) sin(phi)`` equals ``sin(phi + asin(mu))``.
    """
    return math.sin(_phi(phi) + math.asin(mu)) <= CONDITION_SLACK


def saturation_onset(mu) -> float:
    """Smallest phase in [0, pi] satisfying the saturation condition."""
    return math.pi - math.asin(mu)


def lhs_piecewise(phi, mu) -> float:
    phi = _phi(phi)
    if saturation_condition(phi, mu):
        return mu * mu
    r = math.sqrt(1.0 - mu * mu)
    sp = math.sin(phi)
    return mu * mu + 4.0 * r * sp * (r * sp + mu * math.cos(phi))


def error_point_from_phi(phi, mu) -> ErrorPoint:
    f = analytic_cfim(phi, mu)
    if f.f11 < INFO_EPS or f.f22 < INFO_EPS:
        raise ZeroInformation(f"no information on one parameter at phi={_phi(phi)}")
    return ErrorPoint(1.0 / f.f11, 1.0 / f.f22)


# --- independent routes to the classical Fisher information -----------------

def cfim_quadrature(phi, mu, sig, n=400, width=12.0) -> FisherMatrix:
    """Expected outer product of the score by 2-D midpoint quadrature.

    Density and score come from the raw product form, so this shares nothing
    with :func:`analytic_cfim` beyond the coefficient definitions. The box
    spans ``width`` standard deviations about the mean on each axis.
    """
    box = outcome_distribution(phi, mu, sig).box(width)
    a, b = sig.a_resc, sig.b_resc

    def weighted(j, k):
        def f(xi, eta):
            p = np.exp(raw_logpdf(xi, eta, phi, mu, a, b))
            s = raw_score(xi, eta, phi, mu, a, b)
            return p * s[j] * s[k]
        return grid_integrate_2d(f, box, n)

    return FisherMatrix(weighted(0, 0), weighted(0, 1), weighted(1, 1))


def cfim_log_hessian(phi, mu, sig, outcome, h=1e-3) -> FisherMatrix:
    """Minus the finite-difference Hessian of ``log p`` in (A', B').

    For a Gaussian location family the Hessian does not depend on the outcome
    or on the true parameters, so a single evaluation gives the Fisher
    information.
    """
    xi, eta = outcome

    def logp(theta):
        return raw_logpdf(xi, eta, phi, mu, theta[0], theta[1])

    hess = finite_diff_hessian(logp, np.array([sig.a_resc, sig.b_resc]), h)
    return FisherMatrix.from_array(-hess)
