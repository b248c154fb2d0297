"""Composition with the flow map, its inverse, and Eulerian reconstruction.

All interpolation is piecewise cubic Hermite with fourth-order centered
slope estimates, limited on a five-point stencil of secants:

* where the four surrounding secants never change sign, the Fritsch-Carlson bound
  ``|m| <= 3 * min(|secant|)`` applies, so monotone data gives a monotone
  interpolant;
* next to a discrete extremum the bound is relaxed to 1.5 times the one-sided
  parabolic slopes (when those agree with the local convexity), which keeps
  smooth data from being clipped and preserves the interpolation order;
* at the extremum node itself the slope is left alone, and a flat side
  forces it to zero.

The flow map ``phi(x) = x + psi(x)`` is handled as a degree-one circle map,
``phi(x + L) = phi(x) + L``.
"""
import numpy as np

from gnflow import kernels
from gnflow.errors import MonotonicityLoss
from gnflow.state import EulerianState

EPS_MONO = 1e-8


def centered4_slopes(grid, f):
    f = np.asarray(f, dtype=float)
    return (8 * (np.roll(f, -1) - np.roll(f, 1)) - (np.roll(f, -2) - np.roll(f, 2))) / (12 * grid.dx)


def limit_slopes(sec, m):
    """Limit node slopes ``m`` given the cell secants ``sec[j] = (f[j+1] - f[j]) / dx``."""
    sl, sr = np.roll(sec, 1), sec
    sll, srr = np.roll(sec, 2), np.roll(sec, -1)
    p0 = 0.5 * (sl + sr)
    pm = 0.5 * (3.0 * sl - sll)
    pp = 0.5 * (3.0 * sr - srr)
    bound = 3.0 * np.minimum(np.abs(sl), np.abs(sr))
    left = (pm * p0 > 0) & ((sl - sll) * (sr - sl) > 0)
    right = (pp * p0 > 0) & ((sr - sl) * (srr - sr) > 0)
    relaxed = np.maximum(bound, np.where(left, 1.5 * np.minimum(np.abs(p0), np.abs(pm)), 0.0))
    relaxed = np.maximum(relaxed, np.where(right, 1.5 * np.minimum(np.abs(p0), np.abs(pp)), 0.0))
    wide = np.stack([sll, sl, sr, srr])
    monotone_wide = np.all(wide >= 0, axis=0) | np.all(wide <= 0, axis=0)
    cap = np.where(monotone_wide, bound, relaxed)
    sgn = np.sign(sr)
    limited = sgn * np.minimum(np.maximum(m * sgn, 0.0), cap)
    out = np.where(sl * sr > 0, limited, m)
    return np.where(sl * sr == 0, 0.0, out)


def hermite_slopes(grid, f):
    f = np.asarray(f, dtype=float)
    return limit_slopes((np.roll(f, -1) - f) / grid.dx, centered4_slopes(grid, f))


def compose(grid, f, points):
    """Evaluate the periodic monotone Hermite interpolant of ``f`` at ``points``."""
    f = np.ascontiguousarray(f, dtype=float)
    m = np.ascontiguousarray(hermite_slopes(grid, f))
    return kernels.hermite_eval(f, m, grid.dx, np.asarray(points, dtype=float))


def diffeo_tables(grid, psi):
    """Lifted node values and limited slopes of ``phi = id + psi``.

    Raises MonotonicityLoss unless ``phi`` is strictly increasing on the
    nodes with ``min(1 + d psi/dx) > EPS_MONO``.
    """
    psi = np.asarray(psi, dtype=float)
    phix = 1.0 + grid.derivative(psi, "centered2")
    lifted = grid.x + psi
    sec = 1.0 + (np.roll(psi, -1) - psi) / grid.dx
    if not np.all(np.isfinite(phix)) or phix.min() <= EPS_MONO or sec.min() <= 0:
        raise MonotonicityLoss(
            f"flow map is not monotone (min phi_x = {np.nanmin(phix):.3e}, "
            f"min secant = {np.nanmin(sec):.3e})"
        )
    m = limit_slopes(sec, 1.0 + centered4_slopes(grid, psi))
    return np.ascontiguousarray(lifted), np.ascontiguousarray(m)


def evaluate_diffeo(grid, psi, points):
    """``phi(points)`` through the same interpolant that ``invert_diffeo`` inverts."""
    lifted, m = diffeo_tables(grid, psi)
    points = np.asarray(points, dtype=float)
    return points + kernels.hermite_eval(lifted - grid.x, m - 1.0, grid.dx, points)


def invert_diffeo(grid, psi, queries):
    """Return ``x`` with ``phi(x) = y`` for each query ``y``."""
    lifted, m = diffeo_tables(grid, psi)
    return kernels.hermite_invert(lifted, m, grid.dx, grid.length, np.asarray(queries, dtype=float))


def reconstruct_eulerian(grid, state, h0):
    """Eulerian fields ``h = (h0/phi_x) o phi^-1`` and ``u = v o phi^-1`` on the grid nodes."""
    phix = 1.0 + grid.derivative(state.psi, "centered2")
    xstar = invert_diffeo(grid, state.psi, grid.x)
    h = compose(grid, np.asarray(h0) / phix, xstar)
    u = compose(grid, state.v, xstar)
    return EulerianState(h, u)
