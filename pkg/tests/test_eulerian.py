import numpy as np
import pytest

from gnflow import EulerianState, IllPosed, IntegratorConfig, PeriodicGrid, eulerian_rhs, integrate_eulerian
from gnflow.diagnostics import mass, solitary_wave, traveling_wave_residual


def s(grid, k):
    return 4 * np.sin(k * grid.dx / 2) ** 2 / grid.dx**2


def test_still_water_is_steady(circle):
    dh, du = eulerian_rhs(circle, EulerianState(np.ones(circle.n), np.zeros(circle.n)))
    assert np.max(np.abs(dh)) == 0 and np.max(np.abs(du)) == 0


def test_sine_velocity_on_flat_water(circle):
    dh, du = eulerian_rhs(circle, EulerianState(np.ones(circle.n), np.sin(circle.x)))
    np.testing.assert_allclose(dh, -np.cos(circle.x), atol=1e-13)
    coef = -0.5 + 2 / (3 + s(circle, 2))
    np.testing.assert_allclose(du, coef * np.sin(2 * circle.x), atol=1e-13)
    assert coef == pytest.approx(-3 / 14, rel=2e-2)


def test_small_bump_starts_to_slump(circle):
    eps = 1e-4
    dh, du = eulerian_rhs(circle, EulerianState(1 + eps * np.cos(circle.x), np.zeros(circle.n)))
    assert np.max(np.abs(dh)) == 0.0
    np.testing.assert_allclose(du, 3 * eps / (3 + s(circle, 1)) * np.sin(circle.x), atol=10 * eps**2)


def test_solitary_profile_residual_is_second_order():
    res = [traveling_wave_residual(0.2, PeriodicGrid(80.0, n)) for n in (256, 512, 1024)]
    assert np.log2(res[0] / res[1]) == pytest.approx(2.0, abs=0.1)
    assert np.log2(res[1] / res[2]) == pytest.approx(2.0, abs=0.1)


def test_mass_conserved_and_negative_height_rejected():
    grid = PeriodicGrid(80.0, 256)
    st0 = solitary_wave(0.3, grid)
    traj = integrate_eulerian(grid, st0, IntegratorConfig(T=2.0, stride=5))
    m = [mass(grid, s_.h) for s_ in traj.states]
    assert np.ptp(m) < 1e-12
    assert traj.times[-1] == 2.0
    bad = EulerianState(np.full(grid.n, -1.0), np.zeros(grid.n))
    with pytest.raises(IllPosed):
        eulerian_rhs(grid, bad)
