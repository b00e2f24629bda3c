import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from irtr import protocol
from irtr.errors import DenominatorZero, InsufficientSamples, ZeroInformation
from irtr.model import SignalParams
from irtr.numerics import RngState, grid_integrate_2d
from irtr.quantum_info import qfim, geometric_tensor, regrets
from irtr.tradeoff import error_lhs, feasible, irtr_lhs

PHASES = (0.2, 0.6, 1.8, 2.4, 3.0)
MUS = (0.1, 0.3, 0.5, 0.7, 0.9)


@settings(max_examples=200, deadline=None)
@given(st.floats(0, math.pi), st.floats(0, 1))
def test_coefficient_identity(phi, mu):
    assume(abs(protocol.denominator(phi, mu)) > 1e-6)
    c = protocol.coeffs(phi, mu)
    assert abs(c.c_coef * math.sqrt(1 - mu * mu) - c.s_coef * mu - 1.0) < 1e-9 * max(1.0, abs(c.c_coef), abs(c.s_coef))


def test_denominator_zero():
    mu = 0.6
    with pytest.raises(DenominatorZero):
        protocol.coeffs(math.pi / 2 - math.asin(mu), mu)


def test_phase_validation():
    with pytest.raises(ValueError):
        protocol.MeasurementPhase(3.5)
    assert protocol.analytic_cfim(protocol.MeasurementPhase(0.0), 0.0).matrix().tolist() == [[2, 0], [0, 2]]


@pytest.mark.parametrize("phi", PHASES)
@pytest.mark.parametrize("mu", MUS)
def test_cfim_quadrature(phi, mu, rng):
    a, b = rng.uniform(-2, 2, size=2)
    sig = SignalParams.from_rescaled(a, b)
    num = protocol.cfim_quadrature(phi, mu, sig).matrix()
    assert np.max(np.abs(num - protocol.analytic_cfim(phi, mu).matrix())) <= 1e-6


@pytest.mark.parametrize("phi,mu", [(0.6, 0.3), (2.4, 0.9), (3.0, 0.5)])
def test_cfim_log_hessian_translation_invariant(phi, mu, rng):
    exact = protocol.analytic_cfim(phi, mu).matrix()
    for a, b in rng.uniform(-3, 3, size=(3, 2)):
        sig = SignalParams.from_rescaled(a, b)
        out = (a + rng.normal(), b + rng.normal())
        assert np.max(np.abs(protocol.cfim_log_hessian(phi, mu, sig, out).matrix() - exact)) <= 1e-5


@pytest.mark.parametrize("phi,mu", [(0.6, 0.3), (2.4, 0.9), (1.8, 0.1)])
def test_density_normalized_and_forms_agree(phi, mu):
    sig = SignalParams.from_rescaled(0.7, -0.4)
    dist = protocol.outcome_distribution(phi, mu, sig)
    total = grid_integrate_2d(lambda x, y: np.exp(protocol.raw_logpdf(x, y, phi, mu, 0.7, -0.4)), dist.box(), 400)
    assert abs(total - 1.0) < 1e-10
    x, y = np.meshgrid(np.linspace(-2, 2, 7), np.linspace(-3, 3, 7))
    assert np.allclose(dist.logpdf(x, y), protocol.raw_logpdf(x, y, phi, mu, 0.7, -0.4), atol=1e-10)


def test_raw_form_singular_where_reduced_is_not():
    with pytest.raises(DenominatorZero):
        protocol.raw_logpdf(0.0, 0.0, 0.0, 0.5, 0.0, 0.0)
    d = protocol.outcome_distribution(0.0, 0.5, SignalParams.from_rescaled(1.0, 2.0))
    assert (d.mean_xi, d.var_xi) == (1.0, 0.5) and abs(d.mean_eta - 2.0) < 1e-15


def test_saturation_onset_values():
    assert abs(protocol.saturation_onset(0.9) - 2.021823138591159) < 1e-12
    assert abs(protocol.saturation_onset(0.5) - 5 * math.pi / 6) < 1e-15
    assert protocol.saturation_condition(2.03, 0.9) and not protocol.saturation_condition(2.01, 0.9)


def _composed(phi, mu):
    r = regrets(qfim(geometric_tensor(mu)), protocol.analytic_cfim(phi, mu))
    return irtr_lhs(r.d1, r.d2, mu)


@settings(max_examples=300, deadline=None)
@given(st.floats(1e-3, math.pi - 1e-3), st.floats(0, 1))
def test_piecewise_matches_regret_composition(phi, mu):
    assert abs(_composed(phi, mu) - protocol.lhs_piecewise(phi, mu)) <= 1e-12


@settings(max_examples=300, deadline=None)
@given(st.floats(0, math.pi), st.floats(0, 1))
def test_piecewise_composition_conditioning(phi, mu):
    # the regret route takes sqrt(1 - cos^2) and loses ~eps / |sin| near 0 and pi
    bound = 1e-15 / max(abs(math.sin(phi)), 1e-300) + 1e-12
    assert abs(_composed(phi, mu) - protocol.lhs_piecewise(phi, mu)) <= bound


@settings(max_examples=300, deadline=None)
@given(st.floats(1e-3, math.pi - 1e-3), st.floats(1e-3, 1 - 1e-3))
def test_piecewise_flat_exactly_on_condition(phi, mu):
    lhs = protocol.lhs_piecewise(phi, mu)
    if protocol.saturation_condition(phi, mu):
        assert lhs == mu * mu
    else:
        assert lhs > mu * mu


def test_mu_zero_scan():
    for phi in np.linspace(0.1, 3.0, 13):
        assert abs(protocol.lhs_piecewise(phi, 0.0) - 4 * math.sin(phi) ** 2) < 1e-14
    assert protocol.lhs_piecewise(0.0, 0.0) == 0.0


@pytest.mark.parametrize("phi", [2.1, 2.4, 2.7, 3.0, math.pi])
def test_error_points_on_boundary(phi):
    pt = protocol.error_point_from_phi(phi, 0.9)
    assert feasible(pt, 0.9)
    assert abs(error_lhs(pt.e_a, pt.e_b, 0.9) - 0.81) <= 1e-9


def test_zero_information():
    with pytest.raises(ZeroInformation):
        protocol.error_point_from_phi(math.pi / 2, 0.3)


def test_sampling_deterministic():
    dist = protocol.outcome_distribution(2.5, 0.9, SignalParams.from_rescaled(0.0, 0.0))
    a = protocol.sample_outcomes(dist, 1000, RngState(3))
    b = protocol.sample_outcomes(dist, 1000, RngState(3))
    assert a.tobytes() == b.tobytes() and a.shape == (1000, 2)


def test_mle_accepts_both_forms():
    arr = protocol.sample_outcomes(protocol.OutcomeDistribution(1.0, 2.0, -1.0, 0.5), 500, RngState(8))
    assert protocol.mle(arr) == protocol.mle(protocol.as_samples(arr))
    with pytest.raises(InsufficientSamples):
        protocol.mle(arr[:1])


@pytest.mark.parametrize("i,phi", list(enumerate([2.1, 2.4, 2.7, 3.0, math.pi])))
def test_monte_carlo_within_three_standard_errors(i, phi):
    n = 100_000
    pt = protocol.error_point_from_phi(phi, 0.9)
    dist = protocol.outcome_distribution(phi, 0.9, SignalParams.from_rescaled(0.3, -0.2))
    a_hat, b_hat, va, vb = protocol.mle(protocol.sample_outcomes(dist, n, RngState(100 + i)))
    se = math.sqrt(2.0 / (n - 1))
    assert abs(va * n / pt.e_a - 1) < 3 * se
    assert abs(vb * n / pt.e_b - 1) < 3 * se
    assert abs(a_hat - 0.3) < 5 * math.sqrt(pt.e_a / n)
    assert abs(b_hat + 0.2) < 5 * math.sqrt(pt.e_b / n)


@pytest.mark.parametrize("phi,mu", [(0.6, 0.3), (2.4, 0.9)])
def test_score_matches_gradient_of_log_density(phi, mu):
    from irtr.numerics import finite_diff_gradient
    xi, eta, a, b = 0.4, -0.9, 0.1, 0.5
    num = finite_diff_gradient(lambda th: protocol.raw_logpdf(xi, eta, phi, mu, th[0], th[1]), [a, b])
    assert np.allclose(num, protocol.raw_score(xi, eta, phi, mu, a, b), atol=1e-6)
