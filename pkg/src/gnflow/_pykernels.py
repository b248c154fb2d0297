"""Pure-Python/NumPy versions of the hot kernels.

Same signatures and results as the compiled ``_ckernels`` module.  Used when
the extension is not built, or when ``GNFLOW_KERNELS=python`` is set.
"""
import numpy as np

NEWTON_MAXITER = 100


def cyclic_tridiag(lower, diag, upper, rhs):
    """Solve a periodic tridiagonal system.

    Row ``i`` reads ``lower[i]*x[i-1] + diag[i]*x[i] + upper[i]*x[i+1] = rhs[i]``
    with indices taken modulo ``n``; ``lower[0]`` and ``upper[n-1]`` are the
    corner entries.  Thomas sweep plus a Sherman-Morrison rank-one correction.
    No pivoting: the matrix must be diagonally dominant.
    """
    lower = np.asarray(lower, dtype=float)
    diag = np.asarray(diag, dtype=float)
    upper = np.asarray(upper, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    n = diag.shape[0]

    alpha = upper[n - 1]  # A[n-1, 0]
    beta = lower[0]  # A[0, n-1]
    gamma = -diag[0]

    bb = diag.copy()
    bb[0] = diag[0] - gamma
    bb[n - 1] = diag[n - 1] - alpha * beta / gamma

    x = np.empty(n)
    z = np.empty(n)
    cp = np.empty(n)
    uvec = np.zeros(n)
    uvec[0] = gamma
    uvec[n - 1] = alpha

    # forward sweep on both right-hand sides at once
    denom = bb[0]
    cp[0] = upper[0] / denom
    x[0] = rhs[0] / denom
    z[0] = uvec[0] / denom
    for i in range(1, n):
        denom = bb[i] - lower[i] * cp[i - 1]
        cp[i] = upper[i] / denom
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / denom
        z[i] = (uvec[i] - lower[i] * z[i - 1]) / denom
    for i in range(n - 2, -1, -1):
        x[i] -= cp[i] * x[i + 1]
        z[i] -= cp[i] * z[i + 1]

    fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma)
    return x - fact * z


def flux_apply(acoef, bhalf, u, inv_dx2):
    """``a_j u_j - [b_{j+1/2}(u_{j+1}-u_j) - b_{j-1/2}(u_j-u_{j-1})] / dx**2``, periodic."""
    flux = bhalf * (np.roll(u, -1) - u)
    return acoef * u - inv_dx2 * (flux - np.roll(flux, 1))


def _cell_basis(t):
    t2 = t * t
    t3 = t2 * t
    return 2 * t3 - 3 * t2 + 1, t3 - 2 * t2 + t, -2 * t3 + 3 * t2, t3 - t2


def hermite_eval(values, slopes, dx, points):
    """Periodic cubic Hermite interpolant on the uniform grid ``x_j = j*dx``."""
    values = np.asarray(values, dtype=float)
    slopes = np.asarray(slopes, dtype=float)
    n = values.shape[0]
    s = np.asarray(points, dtype=float) / dx
    fl = np.floor(s)
    t = s - fl
    j = fl.astype(np.int64) % n
    j1 = (j + 1) % n
    h00, h10, h01, h11 = _cell_basis(t)
    return values[j] * h00 + dx * slopes[j] * h10 + values[j1] * h01 + dx * slopes[j1] * h11


def hermite_invert(lifted, slopes, dx, length, queries):
    """Invert a monotone periodic-lift Hermite map ``phi(x + L) = phi(x) + L``.

    ``lifted[j] = phi(j*dx)`` (strictly increasing), ``slopes[j] = phi'(j*dx)``.
    Returns ``x`` with ``phi(x) = y`` for each query ``y``.
    """
    lifted = np.asarray(lifted, dtype=float)
    slopes = np.asarray(slopes, dtype=float)
    n = lifted.shape[0]
    q = np.atleast_1d(np.asarray(queries, dtype=float))
    tol = 1e-14 * length

    phi0 = lifted[0]
    wraps = np.floor((q - phi0) / length)
    y = q - wraps * length
    ext = np.append(lifted, phi0 + length)
    j = np.searchsorted(ext, y, side="right") - 1
    j = np.clip(j, 0, n - 1)
    j1 = (j + 1) % n

    y0 = ext[j]
    y1 = ext[j + 1]
    m0 = dx * slopes[j]
    m1 = dx * slopes[j1]

    lo = np.zeros_like(y)
    hi = np.ones_like(y)
    t = np.clip((y - y0) / (y1 - y0), 0.0, 1.0)
    active = np.ones(y.shape, dtype=bool)
    for _ in range(NEWTON_MAXITER):
        h00, h10, h01, h11 = _cell_basis(t)
        r = y0 * h00 + m0 * h10 + y1 * h01 + m1 * h11 - y
        active &= (np.abs(r) > tol) & (hi - lo > 1e-16)
        if not active.any():
            break
        hi = np.where(active & (r > 0), t, hi)
        lo = np.where(active & (r <= 0), t, lo)
        t2 = t * t
        dh = (y0 - y1) * (6 * t2 - 6 * t) + m0 * (3 * t2 - 4 * t + 1) + m1 * (3 * t2 - 2 * t)
        with np.errstate(divide="ignore", invalid="ignore"):
            tn = t - r / dh
        bad = ~np.isfinite(tn) | (tn <= lo) | (tn >= hi)
        tn = np.where(bad, 0.5 * (lo + hi), tn)
        t = np.where(active, tn, t)
    x = (j + t) * dx + wraps * length
    return x.reshape(np.shape(queries))
