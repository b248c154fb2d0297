import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gnflow import EllipticProblem, IllPosed, PeriodicGrid, apply_Ah, solve_Ah, solve_elliptic
from gnflow.elliptic import check_height


def symbol(grid, k):
    """Eigenvalue of the three-point ``-d^2/dx^2`` on the mode ``exp(ikx)``."""
    return 4 * np.sin(k * grid.dx / 2) ** 2 / grid.dx**2


def test_unit_height_acts_diagonally_on_modes(circle):
    u = np.sin(2 * circle.x)
    expected = (3 + symbol(circle, 2)) * u
    np.testing.assert_allclose(apply_Ah(circle, np.ones(circle.n), u), expected, atol=1e-12)


def test_constant_height_two(circle):
    u = np.sin(circle.x)
    expected = (6 + 8 * symbol(circle, 1)) * u
    np.testing.assert_allclose(apply_Ah(circle, 2 * np.ones(circle.n), u), expected, atol=1e-12)
    assert expected.max() == pytest.approx(14.0, rel=1e-2)


def test_solve_inverts_the_symbol(circle):
    prob = EllipticProblem(circle, 3 * np.ones(circle.n), np.ones(circle.n))
    u = solve_elliptic(prob, 7 * np.sin(2 * circle.x))
    np.testing.assert_allclose(u, 7 / (3 + symbol(circle, 2)) * np.sin(2 * circle.x), atol=1e-13)


def test_rejects_nonpositive_height(circle):
    h = np.ones(circle.n)
    h[5] = 0.0
    with pytest.raises(IllPosed):
        apply_Ah(circle, h, np.zeros(circle.n))
    with pytest.raises(IllPosed):
        EllipticProblem(circle, np.ones(circle.n), -np.ones(circle.n))
    with pytest.raises(IllPosed):
        check_height(np.full(circle.n, np.nan))


def random_triple(grid, rng):
    h = 1 + 0.5 * np.sin(grid.x + rng.uniform(0, 6)) * rng.uniform(0, 1) + 0.1 * rng.normal(size=grid.n) ** 2
    return h, rng.normal(size=grid.n), rng.normal(size=grid.n)


@given(seed=st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_symmetric_and_coercive(seed):
    grid = PeriodicGrid(10.0, 64)
    h, u, v = random_triple(grid, np.random.default_rng(seed))
    lhs = grid.quadrature(apply_Ah(grid, h, u) * v)
    rhs = grid.quadrature(u * apply_Ah(grid, h, v))
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)
    assert grid.quadrature(apply_Ah(grid, h, u) * u) >= 3 * h.min() * grid.quadrature(u**2) * (1 - 1e-12)


@given(seed=st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_round_trip(seed):
    grid = PeriodicGrid(10.0, 128)
    h, u, _ = random_triple(grid, np.random.default_rng(seed))
    back = solve_Ah(grid, h, apply_Ah(grid, h, u))
    assert np.max(np.abs(back - u)) < 1e-10 * np.max(np.abs(u))


def test_solve_is_linear_and_scales(circle):
    rng = np.random.default_rng(0)
    h = 1 + 0.3 * np.cos(circle.x)
    f, g = rng.normal(size=(2, circle.n))
    np.testing.assert_allclose(
        solve_Ah(circle, h, 2 * f - g), 2 * solve_Ah(circle, h, f) - solve_Ah(circle, h, g), atol=1e-12)
