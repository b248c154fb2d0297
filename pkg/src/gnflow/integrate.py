"""Fixed-step RK4 integration of the flow-map ODE with guard checks."""
from dataclasses import dataclass, field

import numpy as np

from gnflow import diagnostics
from gnflow.errors import MonotonicityLoss, StepRejected
from gnflow.lagrangian import flow_map_jacobian, lagrangian_rhs
from gnflow.flowmap import EPS_MONO
from gnflow.state import FlowMapState
from gnflow.stepping import IntegratorConfig, auto_dt, rk4_step, step_schedule

TERMINATIONS = ("completed", "monotonicity_loss", "step_rejected")


def step_rk4(grid, state, dt, h0):
    def rhs(y):
        stage = FlowMapState(*y)
        if not stage.is_finite():
            raise StepRejected("non-finite values in an RK4 stage")
        return lagrangian_rhs(grid, stage, h0)

    psi, v = rk4_step(rhs, (state.psi, state.v), dt)
    new = FlowMapState(psi, v)
    if not new.is_finite():
        raise StepRejected("non-finite values after RK4 step")
    phix = flow_map_jacobian(grid, psi)
    if not phix.min() > EPS_MONO:
        raise MonotonicityLoss(f"min phi_x = {phix.min():.3e} after step")
    return new


@dataclass
class Trajectory:
    times: list = field(default_factory=list)
    states: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    termination: str = "completed"
    message: str = ""
    dt: float = 0.0
    steps: int = 0

    def append(self, t, state, record=None):
        self.times.append(t)
        self.states.append(state)
        if record is not None:
            self.diagnostics.append(record)


def integrate(grid, state0, h0, config, record=True):
    """Integrate ``(psi, v)`` to ``config.T``.

    States (and, if ``record``, diagnostics) are stored every ``config.stride``
    steps plus the final step.  A guard violation ends the run early with
    ``termination`` set; the last stored state is always valid.
    """
    h0 = np.asarray(h0, dtype=float)
    nsteps, dt = step_schedule(config, auto_dt(grid, state0.v, h0, config.cfl_safety))
    traj = Trajectory(dt=dt)

    def store(t, state):
        rec = diagnostics.record_lagrangian(grid, state, h0, t, config.sigma) if record else None
        traj.append(t, state, rec)

    store(0.0, state0)
    state = state0
    for i in range(1, nsteps + 1):
        if i > config.max_steps:
            traj.termination = "step_rejected"
            traj.message = f"max_steps={config.max_steps} exceeded"
            break
        try:
            state = step_rk4(grid, state, dt, h0)
        except MonotonicityLoss as exc:
            traj.termination, traj.message = "monotonicity_loss", str(exc)
            break
        except StepRejected as exc:
            traj.termination, traj.message = "step_rejected", str(exc)
            break
        traj.steps = i
        if i % config.stride == 0 or i == nsteps:
            try:
                store(i * dt if i < nsteps else config.T, state)
            except MonotonicityLoss as exc:
                # reconstruction rejected a state the stepper accepted
                traj.termination, traj.message = "monotonicity_loss", str(exc)
                break
    return traj
