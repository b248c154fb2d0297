"""Conserved quantities, exact solutions, error metrics and convergence rates."""
import math
from dataclasses import asdict, dataclass

import numpy as np

from gnflow.eulerian import eulerian_rhs
from gnflow.flowmap import reconstruct_eulerian
from gnflow.grid import synthesize_rough_field
from gnflow.lagrangian import flow_map_jacobian, label_energy, label_mass
from gnflow.state import EulerianState, FlowMapState

CSV_COLUMNS = ("t", "mass", "momentum", "energy", "min_phix", "sobolev_h", "sobolev_u")


@dataclass(frozen=True)
class DiagnosticsRecord:
    t: float
    mass: float
    momentum: float
    energy: float
    min_phix: float
    sobolev_h: float
    sobolev_u: float
    sigma: float
    label_mass: float = math.nan
    label_energy: float = math.nan

    def row(self):
        d = asdict(self)
        return [d[c] for c in CSV_COLUMNS]


def mass(grid, h):
    return grid.quadrature(np.asarray(h) - 1.0)


def momentum(grid, state):
    return grid.quadrature(state.h * state.u)


def energy(grid, state):
    """``int 1/2 h u^2 + 1/2 (h-1)^2 + 1/6 h^3 u_x^2`` (gravity scaled to 1)."""
    h, u = state.h, state.u
    ux = grid.derivative(u, "spectral")
    return grid.quadrature(0.5 * h * u**2 + 0.5 * (h - 1.0) ** 2 + h**3 * ux**2 / 6.0)


def record_lagrangian(grid, state, h0, t, sigma):
    eul = reconstruct_eulerian(grid, state, h0)
    return DiagnosticsRecord(
        t=float(t),
        mass=mass(grid, eul.h),
        momentum=momentum(grid, eul),
        energy=energy(grid, eul),
        min_phix=float(flow_map_jacobian(grid, state.psi).min()),
        sobolev_h=grid.sobolev_norm(eul.h - 1.0, sigma),
        sobolev_u=grid.sobolev_norm(eul.u, sigma + 1.0),
        sigma=float(sigma),
        label_mass=label_mass(grid, state, h0),
        label_energy=label_energy(grid, state, h0),
    )


def solitary_parameters(a):
    """Speed ``c = sqrt(1 + a)`` and inverse width ``kappa = sqrt(3a / (4(1 + a)))``."""
    if not 0 < a < 2:
        raise ValueError(f"solitary wave amplitude must lie in (0, 2), got {a}")
    return math.sqrt(1.0 + a), math.sqrt(3.0 * a / (4.0 * (1.0 + a)))


def solitary_wave(a, grid, t=0.0, x0=None):
    """Exact Serre solitary wave centred at ``x0 + c t`` (default ``x0 = L/2``).

    ``h = 1 + a sech^2(kappa (x - x0 - c t))``, ``u = c (1 - 1/h)``, evaluated
    at the nearest periodic image.
    """
    c, kappa = solitary_parameters(a)
    if x0 is None:
        x0 = grid.length / 2
    L = grid.length
    xi = np.mod(grid.x - x0 - c * t + L / 2, L) - L / 2
    h = 1.0 + a / np.cosh(kappa * xi) ** 2
    u = c * (1.0 - 1.0 / h)
    return EulerianState(h, u)


def traveling_wave_residual(a, grid):
    """Sup norm of ``(h_t, u_t) + c (h_x, u_x)`` for the exact profile.

    The profile is exact for the continuum equations, so this measures only
    the discretization error of the Eulerian right-hand side.
    """
    c, _ = solitary_parameters(a)
    st = solitary_wave(a, grid)
    dh, du = eulerian_rhs(grid, st)
    rh = dh + c * grid.derivative(st.h, "spectral")
    ru = du + c * grid.derivative(st.u, "spectral")
    return float(max(np.max(np.abs(rh)), np.max(np.abs(ru))))


def linf_relative_error(approx, exact):
    return float(np.max(np.abs(approx - exact)) / np.max(np.abs(exact)))


def convergence_rate(errors, resolutions):
    """Observed order: minus the least-squares slope of log(error) vs log(resolution).

    ``resolutions`` grow under refinement (``n`` or ``1/dt``).
    """
    errors = np.asarray(errors, dtype=float)
    resolutions = np.asarray(resolutions, dtype=float)
    if errors.size < 2 or errors.size != resolutions.size:
        raise ValueError("need at least two (error, resolution) pairs of equal length")
    if np.any(errors <= 0) or np.any(resolutions <= 0):
        raise ValueError("errors and resolutions must be positive")
    slope = np.polyfit(np.log(resolutions), np.log(errors), 1)[0]
    return float(-slope)


def state_distance(grid, s1, s2, sigma):
    """``||h1 - h2||_{H^sigma} + ||u1 - u2||_{H^{sigma+1}}``."""
    return grid.sobolev_norm(s1.h - s2.h, sigma) + grid.sobolev_norm(s1.u - s2.u, sigma + 1.0)


def continuous_dependence_probe(grid, h0, u0, delta, sigma, config, seed=12345):
    """Sup over output times of ``dist(S(h0, u0), S(h0, u0 + delta w)) / delta``.

    ``w`` is a fixed rough direction with unit ``H^{sigma+1}`` norm.  Both
    runs share the time step of the unperturbed run.
    """
    from gnflow.integrate import IntegratorConfig, auto_dt, integrate  # cycle: integrate records diagnostics
    if delta == 0:
        return 0.0
    h0 = np.asarray(h0, dtype=float)
    w = synthesize_rough_field(sigma + 1.0, 1.0, seed, grid)
    dt = config.dt if config.dt is not None else auto_dt(grid, u0, h0, config.cfl_safety)
    cfg = IntegratorConfig(T=config.T, dt=dt, cfl_safety=config.cfl_safety,
                           max_steps=config.max_steps, stride=config.stride, sigma=sigma)
    base = integrate(grid, FlowMapState.initial(u0), h0, cfg, record=False)
    pert = integrate(grid, FlowMapState.initial(np.asarray(u0) + delta * w), h0, cfg, record=False)
    for traj in (base, pert):
        if traj.termination != "completed":
            raise RuntimeError(f"probe run ended early: {traj.termination} ({traj.message})")
    worst = 0.0
    for sa, sb in zip(base.states, pert.states):
        ea = reconstruct_eulerian(grid, sa, h0)
        eb = reconstruct_eulerian(grid, sb, h0)
        worst = max(worst, state_distance(grid, ea, eb, sigma))
    return worst / delta
