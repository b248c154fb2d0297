"""State containers shared by the Lagrangian and Eulerian solvers."""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FlowMapState:
    """Lagrangian state: displacement ``psi = phi - id`` and velocity ``v = phi_t``."""

    psi: np.ndarray
    v: np.ndarray

    def is_finite(self):
        return bool(np.all(np.isfinite(self.psi)) and np.all(np.isfinite(self.v)))

    @classmethod
    def initial(cls, u0):
        """``phi = id`` with ``phi_t = u0``."""
        u0 = np.asarray(u0, dtype=float)
        return cls(np.zeros_like(u0), u0.copy())


@dataclass(frozen=True)
class EulerianState:
    """Surface height ``h`` and depth-averaged velocity ``u`` on the grid."""

    h: np.ndarray
    u: np.ndarray

    def is_finite(self):
        return bool(np.all(np.isfinite(self.h)) and np.all(np.isfinite(self.u)))
