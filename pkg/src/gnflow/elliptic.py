"""Variable-coefficient elliptic operators ``u -> a*u - d/dx(b * du/dx)``.

Discretized in flux form with half-point coefficients
``b_{j+1/2} = (b_j + b_{j+1}) / 2``, which keeps the periodic matrix
symmetric positive definite.  ``A_h`` is the case ``a = 3h``, ``b = h**3``.
"""
from dataclasses import dataclass

import numpy as np

from gnflow import kernels
from gnflow.errors import IllPosed, SolverFailure
from gnflow.grid import PeriodicGrid

RESIDUAL_RTOL = 1e-10


def check_height(h, grid=None):
    """Validate a surface height (``min h > 0``) and return it as an array."""
    h = np.asarray(h, dtype=float)
    if grid is not None and h.shape != (grid.n,):
        raise ValueError(f"height has shape {h.shape}, expected ({grid.n},)")
    if not np.all(np.isfinite(h)):
        raise IllPosed("height contains non-finite values")
    if h.min() <= 0:
        raise IllPosed(f"height lost positivity (min h = {h.min():.3e})")
    return h


def tail_magnitude(h):
    """Largest ``|h - 1|`` at the two box edges."""
    return float(max(abs(h[0] - 1.0), abs(h[-1] - 1.0)))


@dataclass(frozen=True)
class EllipticProblem:
    """Coefficients of ``a*u - d/dx(b du/dx)`` sampled on ``grid``."""

    grid: PeriodicGrid
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.ascontiguousarray(self.a, dtype=float)
        b = np.ascontiguousarray(self.b, dtype=float)
        if a.shape != (self.grid.n,) or b.shape != (self.grid.n,):
            raise ValueError("coefficient arrays must match the grid size")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise IllPosed("non-finite elliptic coefficients")
        if a.min() <= 0 or b.min() <= 0:
            raise IllPosed(f"not elliptic: min a = {a.min():.3e}, min b = {b.min():.3e}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def bhalf(self):
        return 0.5 * (self.b + np.roll(self.b, -1))

    def apply(self, u):
        u = np.ascontiguousarray(u, dtype=float)
        return kernels.flux_apply(self.a, self.bhalf, u, 1.0 / self.grid.dx**2)

    def matrix_bands(self):
        """(lower, diag, upper) of the periodic tridiagonal matrix."""
        c = np.ascontiguousarray(self.bhalf / self.grid.dx**2)
        cl = np.roll(c, 1)
        return -cl, self.a + c + cl, -c

    def solve(self, f):
        f = np.ascontiguousarray(f, dtype=float)
        lower, diag, upper = self.matrix_bands()
        u = kernels.cyclic_tridiag(lower, diag, upper, f)
        fnorm = np.max(np.abs(f))
        res = np.max(np.abs(self.apply(u) - f))
        if not np.isfinite(res) or res > RESIDUAL_RTOL * fnorm:
            raise SolverFailure(f"residual {res:.3e} exceeds {RESIDUAL_RTOL:g} * |f| = {fnorm:.3e}")
        return u


def solve_elliptic(problem, f):
    return problem.solve(f)


def Ah_problem(grid, h):
    h = check_height(h, grid)
    return EllipticProblem(grid, 3.0 * h, h**3)


def apply_Ah(grid, h, u):
    """``3 h u - d/dx(h^3 du/dx)`` in flux form."""
    return Ah_problem(grid, h).apply(u)


def solve_Ah(grid, h, f):
    return Ah_problem(grid, h).solve(f)
