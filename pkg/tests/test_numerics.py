import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from irtr.errors import InvalidVariance, NoBracket, NoFiniteValue, NonFiniteIntegrand
from irtr.numerics import (
    RngState, Tolerances, bisect, finite_diff_gradient, finite_diff_hessian,
    grid_integrate_2d, minimize_scalar, sample_gaussian,
)


def test_tolerances_validate():
    with pytest.raises(ValueError):
        Tolerances(abs_tol=-1.0)
    with pytest.raises(ValueError):
        Tolerances(max_iter=0)


def test_minimize_quadratic():
    x, fx = minimize_scalar(lambda x: (x - 0.3) ** 2 + 1.0, -2.0, 2.0)
    assert abs(x - 0.3) < 1e-6
    assert abs(fx - 1.0) < 1e-12


def test_minimize_finds_global_minimum_among_many():
    f = lambda x: math.sin(5 * x) + 0.1 * x  # noqa: E731
    x, fx = minimize_scalar(f, 0.0, 10.0)
    grid = np.linspace(0.0, 10.0, 200_001)
    assert fx <= np.min(np.sin(5 * grid) + 0.1 * grid) + 1e-10


def test_minimize_masks_poles():
    f = lambda x: 1.0 / math.cos(x) ** 2 if abs(math.cos(x)) > 1e-6 else math.inf  # noqa: E731
    x, fx = minimize_scalar(f, 0.5, 4.0)
    assert abs(x - math.pi) < 1e-6 and abs(fx - 1.0) < 1e-10


def test_minimize_all_infinite():
    with pytest.raises(NoFiniteValue):
        minimize_scalar(lambda x: math.nan, 0.0, 1.0)


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(0.1, 5), st.integers(512, 2000))
def test_minimize_never_worse_than_grid(c, k, n):
    f = lambda x: np.cos(k * x) * (x - c) ** 2  # noqa: E731
    x, fx = minimize_scalar(f, -4.0, 4.0, n_grid=n, vectorized=True)
    assert fx <= np.min(f(np.linspace(-4.0, 4.0, n))) + 0.0
    assert -4.0 <= x <= 4.0


def test_bisect_sqrt2():
    r = bisect(lambda x: x * x - 2.0, 0.0, 2.0, Tolerances(abs_tol=1e-14))
    assert abs(r - math.sqrt(2.0)) < 1e-13


def test_bisect_no_bracket():
    with pytest.raises(NoBracket):
        bisect(lambda x: x * x + 1.0, -1.0, 1.0)


@settings(max_examples=50, deadline=None)
@given(st.floats(-5, 5), st.floats(1e-12, 1e-4))
def test_bisect_residual_or_width(root, abs_tol):
    f = lambda x: math.atan(x - root)  # noqa: E731
    tol = Tolerances(abs_tol=abs_tol)
    r = bisect(f, -10.0, 10.0, tol)
    assert abs(f(r)) <= abs_tol or abs(r - root) <= abs_tol


def test_rng_reproducible_and_stateful():
    a, b = RngState(5), RngState(5)
    assert np.array_equal(a.standard_normal(11), b.standard_normal(11))
    assert a.counter == 12
    assert not np.array_equal(a.standard_normal(4), RngState(5).standard_normal(4))


def test_rng_spawn_distinct():
    base = RngState(99)
    assert base.spawn(1).seed == 100
    assert RngState(2**64 - 1).spawn(1).seed == 0
    with pytest.raises(ValueError):
        RngState(-1)


def test_sample_gaussian_moments():
    z = sample_gaussian(RngState(1), 3.0, 4.0, size=200_000)
    assert abs(z.mean() - 3.0) < 0.02
    assert abs(z.var() - 4.0) < 0.05
    assert isinstance(sample_gaussian(RngState(1), 0.0, 1.0), float)


def test_sample_gaussian_bitwise_repeatable():
    x = sample_gaussian(RngState(42), -1.0, 0.25, size=1000)
    y = sample_gaussian(RngState(42), -1.0, 0.25, size=1000)
    assert x.tobytes() == y.tobytes()


@pytest.mark.parametrize("var", [0.0, -1.0, math.nan])
def test_sample_gaussian_bad_variance(var):
    with pytest.raises(InvalidVariance):
        sample_gaussian(RngState(0), 0.0, var)


def test_finite_differences():
    f = lambda x: x[0] ** 3 * x[1] + math.exp(x[1])  # noqa: E731
    x = np.array([0.7, -0.4])
    g = finite_diff_gradient(f, x)
    assert np.allclose(g, [3 * 0.49 * -0.4, 0.343 + math.exp(-0.4)], atol=1e-8)
    h = finite_diff_hessian(f, x)
    exact = np.array([[6 * 0.7 * -0.4, 3 * 0.49], [3 * 0.49, math.exp(-0.4)]])
    assert np.allclose(h, exact, atol=1e-6)


def test_grid_integrate_gaussian():
    f = lambda x, y: np.exp(-(x * x + y * y)) / math.pi  # noqa: E731
    assert abs(grid_integrate_2d(f, ((-8, 8), (-8, 8)), 128) - 1.0) < 1e-12


def test_grid_integrate_second_order():
    f = lambda x, y: np.sin(x) * y * y  # noqa: E731
    exact = (1 - math.cos(1.0)) / 3.0
    err = [abs(grid_integrate_2d(f, ((0, 1), (0, 1)), n) - exact) for n in (64, 128, 256)]
    assert 3.8 < err[0] / err[1] < 4.2
    assert 3.8 < err[1] / err[2] < 4.2


def test_grid_integrate_rejects_nonfinite():
    with pytest.raises(NonFiniteIntegrand):
        grid_integrate_2d(lambda x, y: np.where(x > 0.5, np.inf, y), ((0, 1), (0, 1)), 64)
    with pytest.raises(ValueError):
        grid_integrate_2d(lambda x, y: x * y, ((0, 1), (0, 1)), 8)


def test_documented_examples():
    x, fx = minimize_scalar(lambda x: (x - 1.0) ** 2, 0.0, 2.0)
    assert abs(x - 1.0) < 2e-9 and fx < 1e-17
    x, fx = minimize_scalar(math.cos, 0.0, math.pi)
    assert abs(x - math.pi) < 4e-9 and abs(fx + 1.0) < 1e-15
    assert bisect(lambda x: x - 0.5, 0.0, 1.0) == 0.5
    assert np.allclose(finite_diff_gradient(lambda v: v[0] ** 2 + v[1] ** 2, [1.0, 2.0]), [2.0, 4.0], atol=1e-8)
    assert np.array_equal(finite_diff_gradient(lambda v: 3.0, [0.1, 0.2, 0.3]), np.zeros(3))
    assert grid_integrate_2d(lambda x, y: 0.0 * x * y, ((0, 1), (0, 1)), 64) == 0.0


def test_million_normal_draws():
    z = sample_gaussian(RngState(2024), 0.0, 1.0, size=1_000_000)
    assert abs(z.mean()) < 4e-3
    w = sample_gaussian(RngState(2025), 3.0, 4.0, size=1_000_000)
    assert abs(w.var() / 4.0 - 1.0) < 0.05
