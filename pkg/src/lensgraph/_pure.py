"""Pure-Python force-step kernel, the fallback for the compiled extension.

Every arithmetic operation here must match `_fastpath.pyx` op for op: same
expressions, same evaluation order, same libm calls. The two backends are
required to produce bit-identical doubles, so do not "simplify" one without
the other.
"""

from math import sqrt

_MASK = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15
# exactly 2**-52; (r >> 11) * _SCALE - 1.0 maps a 53-bit integer onto [-1, 1)
_SCALE = 1.0 / 4503599627370496.0

BACKEND = "pure"


def _hash_unit(hi, hj):
    """Deterministic unit vector for a coincident node pair.

    Seeded from the pair's id hashes (splitmix64 stream) and produced by
    rejection sampling on the unit disc, so no trig is involved.
    """
    state = (hi + hj * _GOLDEN) & _MASK
    while True:
        state = (state + _GOLDEN) & _MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        r1 = z ^ (z >> 31)
        state = (state + _GOLDEN) & _MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        r2 = z ^ (z >> 31)
        x = (r1 >> 11) * _SCALE - 1.0
        y = (r2 >> 11) * _SCALE - 1.0
        n2 = x * x + y * y
        if 1e-12 < n2 <= 1.0:
            nrm = sqrt(n2)
            return x / nrm, y / nrm


def step_kernel(xs, ys, dispx, dispy, hashes, edge_i, edge_j, k, repulsion, temp):
    """One force-directed step in place: repulsion, attraction, clamped move.

    Arrays are indexed in sorted-node-id order; edges are listed in canonical
    (source, target) order. Pair distances are floored at 0.01*k so repulsion
    stays finite; exactly coincident pairs get a hash-derived direction.
    """
    n = len(xs)
    m = len(edge_i)
    dmin = 0.01 * k

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
                ux, uy = _hash_unit(hashes[i], hashes[j])
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
