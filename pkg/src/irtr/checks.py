"""Cross-validation suite run by ``irtr verify``.

Every check pairs a closed form with an independently computed quantity
(finite differences, quadrature, bisection, dense grids, Monte Carlo) and
reports whether they agree at a fixed tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gw_sensor, holevo, protocol, quantum_info, tradeoff
from .model import EncodingParams, SignalParams
from .numerics import RngState, Tolerances, bisect

MC_PHASES = (2.1, 2.4, 2.7, 3.0, math.pi)
TANGENCY_CASES = [(w, mu) for w in (0.15, 0.5, 0.85) for mu in (0.1, 0.5, 0.7, 0.9)]
CFIM_PHASES = (0.2, 0.6, 1.8, 2.4, 3.0)
CFIM_MUS = (0.1, 0.3, 0.5, 0.7, 0.9)


@dataclass
class Check:
    name: str
    passed: bool | None  # None means skipped
    detail: str = ""

    @property
    def label(self):
        return {True: "PASS", False: "FAIL", None: "SKIP"}[self.passed]


def check_geometric_tensor(seed=11):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for mu in np.linspace(0.0, 1.0, 11):
        exact = quantum_info.geometric_tensor(float(mu)).matrix()
        for a, b in rng.uniform(-3.0, 3.0, size=(5, 2)):
            num = quantum_info.geometric_tensor_oracle(
                EncodingParams(1.0, float(mu)), SignalParams.from_rescaled(a, b)
            ).matrix()
            worst = max(worst, float(np.abs(num - exact).max()))
    return Check("geometric tensor oracle vs closed form", worst <= 1e-6, f"max |dQ| = {worst:.3g}")


def check_cfim(seed=12):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for phi in CFIM_PHASES:
        for mu in CFIM_MUS:
            exact = protocol.analytic_cfim(phi, mu).matrix()
            a, b = rng.uniform(-2.0, 2.0, size=2)
            sig = SignalParams.from_rescaled(a, b)
            quad = protocol.cfim_quadrature(phi, mu, sig).matrix()
            outcome = (a + rng.normal(), b + rng.normal())
            hess = protocol.cfim_log_hessian(phi, mu, sig, outcome).matrix()
            worst = max(worst, float(np.abs(quad - exact).max()), float(np.abs(hess - exact).max()))
    return Check("classical FIM: analytic vs quadrature vs log-density Hessian", worst <= 1e-5,
                 f"max |dF| = {worst:.3g}")


def check_piecewise(seed=13):
    rng = np.random.default_rng(seed)
    qf = quantum_info.qfim(quantum_info.geometric_tensor(0.0))
    worst = 0.0
    flat_ok = True
    for phi, mu in zip(rng.uniform(0.0, math.pi, 1000), rng.uniform(0.0, 1.0, 1000)):
        r = quantum_info.regrets(qf, protocol.analytic_cfim(phi, mu))
        composed = tradeoff.irtr_lhs(r.d1, r.d2, mu)
        pw = protocol.lhs_piecewise(phi, mu)
        worst = max(worst, abs(composed - pw))
        if protocol.saturation_condition(phi, mu) and pw != mu * mu:
            flat_ok = False
    return Check("piecewise tradeoff LHS vs regret composition", worst <= 1e-12 and flat_ok,
                 f"max diff = {worst:.3g}")


def check_boundary(inject_fault=False):
    sign = -1.0 if inject_fault else 1.0
    tol = Tolerances(abs_tol=1e-15)
    worst = 0.0
    for mu in (0.1, 0.5, 0.7, 0.9):
        top = tradeoff.endpoint_error(mu)
        for e_a in np.linspace(0.5, top, 1000)[:-1]:
            target = tradeoff.boundary_eb(float(e_a), mu)

            def g(e_b, e_a=float(e_a)):
                return tradeoff.error_lhs(e_a, e_b, mu, cross_sign=sign) - mu * mu

            try:
                root = bisect(g, 0.5, 2.0 * top + 1.0, tol)
            except ValueError:
                return Check("boundary closed form vs bisection", False, f"no bracket at mu={mu}")
            worst = max(worst, abs(root - target))
    return Check("boundary closed form vs bisection", worst <= 1e-9, f"max |de_b| = {worst:.3g}")


def check_tangency():
    gaps = [holevo.tangency_gap(w, mu, 10_000) for w, mu in TANGENCY_CASES]
    ok = all(-1e-9 <= g <= 1e-6 for g in gaps)
    return Check("Holevo line tangent to tradeoff boundary", ok,
                 f"gap range [{min(gaps):.3g}, {max(gaps):.3g}]")


def check_monte_carlo(n=100_000, seed=2024):
    mu = 0.9
    worst = 0.0
    for i, phi in enumerate(MC_PHASES):
        pt = protocol.error_point_from_phi(phi, mu)
        dist = protocol.outcome_distribution(phi, mu, SignalParams.from_rescaled(0.0, 0.0))
        samples = protocol.sample_outcomes(dist, n, RngState(seed + i))
        _, _, va, vb = protocol.mle(samples)
        worst = max(worst, abs(va * n / pt.e_a - 1.0), abs(vb * n / pt.e_b - 1.0))
    return Check("Monte-Carlo MLE variances vs inverse CFIM", worst <= 0.05,
                 f"max rel. dev = {worst:.3g}")


def check_compatible_point():
    sigma = holevo.hcrb(0.5, 0.0).sigma
    e_eq = tradeoff.equal_weight_error(0.0)
    pt = protocol.error_point_from_phi(0.0, 0.0)
    ok = abs(sigma - 1.0) <= 1e-12 and e_eq == 0.5 and pt.e_a == 0.5 and pt.e_b == 0.5
    return Check("mu = 0: simultaneous quantum limits", ok, f"sigma_H = {sigma!r}")


def check_equal_weight():
    mus = np.linspace(0.0, 1.0, 201)
    vals = np.array([tradeoff.equal_weight_error(float(m)) for m in mus])
    ok = bool(np.all(np.diff(vals) >= 0)) and vals[0] == 0.5 and abs(vals[-1] - 1.0) <= 1e-12
    ok = ok and abs(tradeoff.equal_weight_error(0.5) - 0.5358983848622454) <= 1e-9
    # equal weights: the Holevo bound is twice the symmetric-point error
    ok = ok and abs(holevo.hcrb(0.5, 0.7).sigma - 2 * tradeoff.equal_weight_error(0.7)) <= 1e-9
    return Check("equal-weight error curve", ok, f"e(1) = {float(vals[-1])!r}")


def check_gw():
    base = dict(signal_freq=3000.0, bandwidth=42.0, integration_time=1.0, norm=1.0)
    sym = []
    for r in (0.0, 0.4, 0.6, 0.8):
        cfg = gw_sensor.DetunedConfig(detuning=r * 3000.0, **base)
        sym.append(tradeoff.equal_weight_error(gw_sensor.mu_detuned(cfg)))
    mu08 = gw_sensor.mu_detuned(gw_sensor.DetunedConfig(detuning=2400.0, **base))
    ok = all(a < b for a, b in zip(sym, sym[1:])) and sym[0] == 0.5
    ok = ok and abs(mu08 - 1.6 / (1.64 + (42 / 3000) ** 2)) <= 1e-12
    return Check("detuned sensor frontiers nest with detuning", ok, f"mu(0.8 Omega) = {mu08:.7f}")


def run_all(fast=False, inject_fault=False):
    checks = [
        check_geometric_tensor(),
        check_cfim(),
        check_piecewise(),
        check_boundary(inject_fault),
        check_tangency(),
        check_compatible_point(),
        check_equal_weight(),
        check_gw(),
    ]
    if fast:
        checks.append(Check("Monte-Carlo MLE variances vs inverse CFIM", None, "--fast"))
    else:
        checks.append(check_monte_carlo())
    return checks
