import numpy as np
import pytest

from gnflow import EulerianState, IntegratorConfig, PeriodicGrid, continuous_dependence_probe, convergence_rate
from gnflow.diagnostics import (
    energy, linf_relative_error, mass, momentum, solitary_parameters, solitary_wave, state_distance,
)


def test_solitary_parameters():
    c, kappa = solitary_parameters(0.2)
    assert c == pytest.approx(np.sqrt(1.2)) and kappa == pytest.approx(np.sqrt(0.125))
    for a in (0.0, 2.0, -0.1):
        with pytest.raises(ValueError):
            solitary_parameters(a)


def test_solitary_translation_is_periodic(box):
    c, _ = solitary_parameters(0.2)
    a = solitary_wave(0.2, box, t=box.length / c)
    np.testing.assert_allclose(a.h, solitary_wave(0.2, box).h, atol=1e-12)


def test_solitary_mass(box):
    _, kappa = solitary_parameters(0.2)
    assert mass(box, solitary_wave(0.2, box).h) == pytest.approx(0.2 * 2 / kappa, rel=1e-10)


def test_energy_of_still_water_is_zero(circle):
    st = EulerianState(np.ones(circle.n), np.zeros(circle.n))
    assert energy(circle, st) == 0.0 and momentum(circle, st) == 0.0


def test_energy_of_sine_on_flat_water(circle):
    st = EulerianState(np.ones(circle.n), np.sin(circle.x))
    assert energy(circle, st) == pytest.approx(np.pi / 2 + np.pi / 6, rel=1e-12)


def test_convergence_rate():
    n = np.array([64, 128, 256])
    assert convergence_rate(3.0 * n**-2.0, n) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        convergence_rate([1.0], [1.0])
    with pytest.raises(ValueError):
        convergence_rate([1.0, 0.0], [1.0, 2.0])


def test_relative_error_and_distance(circle):
    f = np.sin(circle.x)
    assert linf_relative_error(1.01 * f, f) == pytest.approx(0.01)
    a = EulerianState(np.ones(circle.n), f)
    assert state_distance(circle, a, a, 1.0) == 0.0


def test_probe_quotient_is_stable_for_small_data():
    grid = PeriodicGrid(80.0, 256)
    h0 = 1 + 0.02 * np.cos(2 * np.pi * grid.x / 80)
    u0 = np.zeros(grid.n)
    cfg = IntegratorConfig(T=0.5, stride=5)
    q1 = continuous_dependence_probe(grid, h0, u0, 1e-3, 1.0, cfg)
    q2 = continuous_dependence_probe(grid, h0, u0, 5e-4, 1.0, cfg)
    assert 0 < q1 < 10 and abs(q1 / q2 - 1) < 0.05
    assert continuous_dependence_probe(grid, h0, u0, 0.0, 1.0, cfg) == 0.0
