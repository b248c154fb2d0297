import math

import numpy as np
import pytest

from gnflow import FlowMapState, MonotonicityLoss, IntegratorConfig, PeriodicGrid, integrate, step_rk4
from gnflow.diagnostics import solitary_wave
from gnflow.stepping import auto_dt, rk4_step, step_schedule


def test_rk4_exponential_one_step():
    (y,) = rk4_step(lambda y: (y[0],), (np.array([1.0]),), 0.1)
    assert y[0] == pytest.approx(1.10517083, abs=1e-8)
    assert abs(y[0] - math.exp(0.1)) < 1e-7


def test_rk4_harmonic_oscillator():
    y = (np.array([1.0]), np.array([0.0]))
    for _ in range(10):
        y = rk4_step(lambda s: (s[1], -s[0]), y, 0.1)
    # ten steps of the stability polynomial R(z) at z = 0.1i
    z = 0.1j
    amp = (1 + z + z**2 / 2 + z**3 / 6 + z**4 / 24) ** 10
    assert y[0][0] == pytest.approx(amp.real, abs=1e-15)
    assert abs(y[0][0] - math.cos(1.0)) < 1e-6


def test_rk4_global_order():
    errs = []
    for n in (10, 20, 40):
        y = (np.array([1.0]), np.array([0.0]))
        for _ in range(n):
            y = rk4_step(lambda s: (s[1], -s[0]), y, 1.0 / n)
        errs.append(abs(y[0][0] - math.cos(1.0)))
    assert np.log2(errs[0] / errs[1]) == pytest.approx(4.0, abs=0.2)


def test_schedule_lands_on_final_time():
    n, dt = step_schedule(IntegratorConfig(T=1.0, dt=0.3), 99.0)
    assert n == 4 and dt == pytest.approx(0.25)
    assert step_schedule(IntegratorConfig(T=0.0), 0.1) == (0, 0.0)
    n, dt = step_schedule(IntegratorConfig(T=1.0), 0.1)
    assert n == 10


@pytest.mark.parametrize("kw", [dict(T=-1), dict(T=1, dt=0), dict(T=1, method="euler"),
                                dict(T=1, cfl_safety=2), dict(T=1, stride=0)])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        IntegratorConfig(**kw)


def test_auto_dt_uses_wave_speed():
    grid = PeriodicGrid(80.0, 1024)
    dt = auto_dt(grid, np.zeros(grid.n), np.ones(grid.n), 0.9)
    assert dt == pytest.approx(0.9 * grid.dx)


def test_equilibrium_stays_put(box):
    traj = integrate(box, FlowMapState.initial(np.zeros(box.n)), np.ones(box.n), IntegratorConfig(T=1.0))
    assert traj.termination == "completed"
    assert np.max(np.abs(traj.states[-1].psi)) == 0.0


def test_determinism_and_final_time():
    grid = PeriodicGrid(80.0, 256)
    st0 = solitary_wave(0.2, grid)
    cfg = IntegratorConfig(T=1.0, stride=7)
    a = integrate(grid, FlowMapState.initial(st0.u), st0.h, cfg)
    b = integrate(grid, FlowMapState.initial(st0.u), st0.h, cfg)
    np.testing.assert_array_equal(a.states[-1].psi, b.states[-1].psi)
    assert a.times[-1] == 1.0 and len(a.times) == len(a.diagnostics)
    assert a.steps == round(1.0 / a.dt)


def test_guard_terminates_cleanly():
    grid = PeriodicGrid(2 * np.pi, 64)
    # nearly folded map pushed further by an oversized step
    start = FlowMapState(0.9 * np.sin(grid.x), -5.0 * np.sin(grid.x))
    with pytest.raises(MonotonicityLoss):
        step_rk4(grid, start, 0.1, np.ones(grid.n))
    traj = integrate(grid, start, np.ones(grid.n), IntegratorConfig(T=1.0, dt=0.1))
    assert traj.termination == "monotonicity_loss" and traj.steps == 0
    assert traj.states[-1] is start


def test_max_steps_reported():
    grid = PeriodicGrid(2 * np.pi, 32)
    traj = integrate(grid, FlowMapState.initial(np.zeros(grid.n)), np.ones(grid.n),
                     IntegratorConfig(T=1.0, dt=0.1, max_steps=3))
    assert traj.termination == "step_rejected" and traj.steps == 3


def test_single_step_preserves_zero_mean_displacement_rate(box):
    st0 = solitary_wave(0.2, box)
    new = step_rk4(box, FlowMapState.initial(st0.u), 0.05, st0.h)
    assert np.all(np.isfinite(new.psi))
