"""Lagrangian flow-map solver for the 1D Green-Naghdi (Serre) system."""
from gnflow.diagnostics import (
    DiagnosticsRecord,
    continuous_dependence_probe,
    convergence_rate,
    energy,
    mass,
    momentum,
    solitary_wave,
)
from gnflow.elliptic import EllipticProblem, apply_Ah, solve_Ah, solve_elliptic
from gnflow.errors import (
    ConfigError,
    GNFlowError,
    IllPosed,
    MonotonicityLoss,
    SolverFailure,
    StepRejected,
)
from gnflow.eulerian import eulerian_rhs, integrate_eulerian
from gnflow.flowmap import compose, invert_diffeo, reconstruct_eulerian
from gnflow.grid import PeriodicGrid, synthesize_rough_field
from gnflow.integrate import IntegratorConfig, Trajectory, integrate, step_rk4
from gnflow.kernels import BACKEND
from gnflow.lagrangian import conjugated_derivative, evaluate_F, lagrangian_rhs
from gnflow.state import EulerianState, FlowMapState

__version__ = "0.1.0"
