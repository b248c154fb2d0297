"""Time-step bookkeeping shared by the Lagrangian and Eulerian integrators."""
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class IntegratorConfig:
    """Time-stepping parameters.  ``dt=None`` selects the CFL-style heuristic."""

    T: float
    dt: float | None = None
    method: str = "rk4"
    cfl_safety: float = 0.9
    max_steps: int = 1_000_000
    stride: int = 10
    sigma: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.T) and self.T >= 0):
            raise ValueError(f"T must be finite and >= 0, got {self.T}")
        if self.dt is not None and not (math.isfinite(self.dt) and self.dt > 0):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.method != "rk4":
            raise ValueError(f"unsupported method {self.method!r}")
        if not 0 < self.cfl_safety <= 1:
            raise ValueError(f"cfl_safety must lie in (0, 1], got {self.cfl_safety}")
        if self.max_steps < 1 or self.stride < 1:
            raise ValueError("max_steps and stride must be positive")


def auto_dt(grid, velocity, h0, cfl_safety):
    """``cfl_safety * dx / (max|v| + c_ref)`` with ``c_ref = sqrt(1 + max|h0 - 1|)``.

    A safety heuristic based on the long-wave gravity speed, not a
    stability bound.
    """
    c_ref = math.sqrt(1.0 + float(np.max(np.abs(np.asarray(h0) - 1.0))))
    return cfl_safety * grid.dx / (float(np.max(np.abs(velocity))) + c_ref)


def step_schedule(config, dt_default):
    """Number of steps and the uniform step that lands exactly on ``T``."""
    if config.T == 0:
        return 0, 0.0
    dt = config.dt if config.dt is not None else dt_default
    nsteps = max(1, math.ceil(config.T / dt - 1e-9))
    return nsteps, config.T / nsteps


def rk4_step(rhs, y, dt):
    """One classical RK4 step for a tuple of arrays ``y`` with ``y' = rhs(y)``."""
    k1 = rhs(y)
    k2 = rhs(tuple(a + 0.5 * dt * b for a, b in zip(y, k1)))
    k3 = rhs(tuple(a + 0.5 * dt * b for a, b in zip(y, k2)))
    k4 = rhs(tuple(a + dt * b for a, b in zip(y, k3)))
    return tuple(
        a + (dt / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        for a, b1, b2, b3, b4 in zip(y, k1, k2, k3, k4)
    )
