# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.  See ``_pykernels`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.math cimport floor, fabs, isfinite

cnp.import_array()

DEF NEWTON_MAXITER = 100


def cyclic_tridiag(const double[::1] lower, const double[::1] diag,
                   const double[::1] upper, const double[::1] rhs):
    cdef Py_ssize_t n = diag.shape[0]
    cdef Py_ssize_t i
    cdef double alpha = upper[n - 1]
    cdef double beta = lower[0]
    cdef double gamma = -diag[0]
    cdef double denom, fact, bi

    out = np.empty(n)
    cdef double[::1] x = out
    cdef double[::1] z = np.empty(n)
    cdef double[::1] cp = np.empty(n)

    denom = diag[0] - gamma
    cp[0] = upper[0] / denom
    x[0] = rhs[0] / denom
    z[0] = gamma / denom
    for i in range(1, n):
        bi = diag[i]
        if i == n - 1:
            bi = bi - alpha * beta / gamma
        denom = bi - lower[i] * cp[i - 1]
        cp[i] = upper[i] / denom
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / denom
        z[i] = ((alpha if i == n - 1 else 0.0) - lower[i] * z[i - 1]) / denom
    for i in range(n - 2, -1, -1):
        x[i] -= cp[i] * x[i + 1]
        z[i] -= cp[i] * z[i + 1]

    fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma)
    for i in range(n):
        x[i] -= fact * z[i]
    return out


def flux_apply(const double[::1] acoef, const double[::1] bhalf,
               const double[::1] u, double inv_dx2):
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t j
    out = np.empty(n)
    cdef double[::1] o = out
    cdef double fr, fl
    fl = bhalf[n - 1] * (u[0] - u[n - 1])
    for j in range(n):
        if j == n - 1:
            fr = bhalf[j] * (u[0] - u[j])
        else:
            fr = bhalf[j] * (u[j + 1] - u[j])
        o[j] = acoef[j] * u[j] - inv_dx2 * (fr - fl)
        fl = fr
    return out


cdef inline double _herm(double t, double y0, double m0, double y1, double m1) nogil:
    cdef double t2 = t * t
    cdef double t3 = t2 * t
    return (y0 * (2 * t3 - 3 * t2 + 1) + m0 * (t3 - 2 * t2 + t)
            + y1 * (-2 * t3 + 3 * t2) + m1 * (t3 - t2))


cdef inline double _dherm(double t, double y0, double m0, double y1, double m1) nogil:
    cdef double t2 = t * t
    return ((y0 - y1) * (6 * t2 - 6 * t) + m0 * (3 * t2 - 4 * t + 1)
            + m1 * (3 * t2 - 2 * t))


def hermite_eval(const double[::1] values, const double[::1] slopes, double dx, points):
    pts = np.ascontiguousarray(points, dtype=np.float64)
    shape = pts.shape
    cdef const double[::1] p = pts.ravel()
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t m = p.shape[0]
    cdef Py_ssize_t i, j, j1
    cdef double s, fl, t
    out = np.empty(m)
    cdef double[::1] o = out
    for i in range(m):
        s = p[i] / dx
        fl = floor(s)
        t = s - fl
        j = (<Py_ssize_t> fl) % n
        if j < 0:
            j += n
        j1 = j + 1
        if j1 == n:
            j1 = 0
        o[i] = _herm(t, values[j], dx * slopes[j], values[j1], dx * slopes[j1])
    return out.reshape(shape)


def hermite_invert(const double[::1] lifted, const double[::1] slopes, double dx,
                   double length, queries):
    qs = np.ascontiguousarray(queries, dtype=np.float64)
    shape = qs.shape
    cdef const double[::1] q = qs.ravel()
    cdef Py_ssize_t n = lifted.shape[0]
    cdef Py_ssize_t m = q.shape[0]
    cdef Py_ssize_t i, j, j1, lo_i, hi_i, mid, it
    cdef double phi0 = lifted[0]
    cdef double tol = 1e-14 * length
    cdef double w, y, y0, y1, m0, m1, t, lo, hi, r, dh, tn
    out = np.empty(m)
    cdef double[::1] o = out
    for i in range(m):
        w = floor((q[i] - phi0) / length)
        y = q[i] - w * length
        # last j with lifted[j] <= y, over the extended table lifted[0..n]
        lo_i = 0
        hi_i = n + 1
        while hi_i - lo_i > 1:
            mid = (lo_i + hi_i) // 2
            if mid == n:
                y0 = phi0 + length
            else:
                y0 = lifted[mid]
            if y0 <= y:
                lo_i = mid
            else:
                hi_i = mid
        j = lo_i
        if j > n - 1:
            j = n - 1
        j1 = j + 1
        y0 = lifted[j]
        if j1 == n:
            y1 = phi0 + length
            j1 = 0
        else:
            y1 = lifted[j1]
        m0 = dx * slopes[j]
        m1 = dx * slopes[j1]
        lo = 0.0
        hi = 1.0
        t = (y - y0) / (y1 - y0)
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
        for it in range(NEWTON_MAXITER):
            r = _herm(t, y0, m0, y1, m1) - y
            if fabs(r) <= tol or hi - lo <= 1e-16:
                break
            if r > 0:
                hi = t
            else:
                lo = t
            dh = _dherm(t, y0, m0, y1, m1)
            tn = t - r / dh if dh != 0.0 else lo - 1.0
            if not isfinite(tn) or tn <= lo or tn >= hi:
                tn = 0.5 * (lo + hi)
            t = tn
        o[i] = (j + t) * dx + w * length
    return out.reshape(shape)
