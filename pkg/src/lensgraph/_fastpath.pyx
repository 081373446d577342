# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled force-step kernel.

Op-for-op identical to `_pure.step_kernel`: same expressions, same evaluation
order, same libm calls. Compiled with -ffp-contract=off so the C path rounds
every intermediate exactly like the interpreter does. Do not "simplify" one
backend without the other.
"""

from libc.math cimport sqrt

ctypedef unsigned long long u64

cdef double _SCALE = 1.0 / 4503599627370496.0

BACKEND = "compiled"


cdef inline u64 _splitmix(u64* state) noexcept nogil:
    cdef u64 z
    state[0] = state[0] + <u64>0x9E3779B97F4A7C15
    z = state[0]
    z = (z ^ (z >> 30)) * <u64>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <u64>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline void _hash_unit(u64 hi, u64 hj, double* ux, double* uy) noexcept nogil:
    cdef u64 state = hi + hj * <u64>0x9E3779B97F4A7C15
    cdef u64 r1, r2
    cdef double x, y, n2, nrm
    while True:
        r1 = _splitmix(&state)
        r2 = _splitmix(&state)
        x = <double>(r1 >> 11) * _SCALE - 1.0
        y = <double>(r2 >> 11) * _SCALE - 1.0
        n2 = x * x + y * y
        if 1e-12 < n2 <= 1.0:
            nrm = sqrt(n2)
            ux[0] = x / nrm
            uy[0] = y / nrm
            return


def step_kernel(double[:] xs, double[:] ys, double[:] dispx, double[:] dispy,
                u64[:] hashes, int[:] edge_i, int[:] edge_j,
                double k, double repulsion, double temp):
    """One force-directed step in place; see the pure twin for the contract."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t m = edge_i.shape[0]
    cdef double dmin = 0.01 * k
    cdef Py_ssize_t i, j, e
    cdef double xi, yi, dx, dy, d2, dist, ux, uy, f, fx, fy, s

    for i in range(n):
        dispx[i] = 0.0
        dispy[i] = 0.0

    for i in range(n):
        xi = xs[i]
        yi = ys[i]
        for j in range(i + 1, n):
            dx = xi - xs[j]
            dy = yi - ys[j]
            d2 = dx * dx + dy * dy
            if d2 > 0.0:
                dist = sqrt(d2)
                ux = dx / dist
                uy = dy / dist
                if dist < dmin:
                    dist = dmin
            else:
                _hash_unit(hashes[i], hashes[j], &ux, &uy)
                dist = dmin
            f = repulsion * k * k / dist
            fx = ux * f
            fy = uy * f
            dispx[i] = dispx[i] + fx
            dispy[i] = dispy[i] + fy
            dispx[j] = dispx[j] - fx
            dispy[j] = dispy[j] - fy

    for e in range(m):
        i = edge_i[e]
        j = edge_j[e]
        dx = xs[i] - xs[j]
        dy = ys[i] - ys[j]
        d2 = dx * dx + dy * dy
        if d2 > 0.0:
            dist = sqrt(d2)
            f = d2 / k
            ux = dx / dist
            uy = dy / dist
            fx = ux * f
            fy = uy * f
            dispx[i] = dispx[i] - fx
            dispy[i] = dispy[i] - fy
            dispx[j] = dispx[j] + fx
            dispy[j] = dispy[j] + fy

    for i in range(n):
        dx = dispx[i]
        dy = dispy[i]
        d2 = dx * dx + dy * dy
        if d2 > 0.0:
            dist = sqrt(d2)
            if dist > temp:
                s = temp / dist
                dx = dx * s
                dy = dy * s
            xs[i] = xs[i] + dx
            ys[i] = ys[i] + dy
