"""Hot loops of the 2-D geometry kernel.

Each kernel has a plain-loop implementation (compiled with numba when
available) and a numpy implementation. The public names dispatch on
:data:`semipolar._accel.USE_NUMBA`; both variants are importable under
their ``_nb`` / ``_np`` suffixes so they can be compared directly.
"""

import numpy as np

from ._accel import USE_NUMBA, maybe_njit


def _hull_chain_loop(pts, eps):
    # Andrew's monotone chain on lexicographically sorted points.
    # Turns with cross product <= eps are popped, so collinear points go.
    n = pts.shape[0]
    idx = np.empty(2 * n, dtype=np.int64)
    k = 0
    for i in range(n):
        while k >= 2:
            o = idx[k - 2]
            a = idx[k - 1]
            cr = ((pts[a, 0] - pts[o, 0]) * (pts[i, 1] - pts[o, 1])
                  - (pts[a, 1] - pts[o, 1]) * (pts[i, 0] - pts[o, 0]))
            if cr > eps:
                break
            k -= 1
        idx[k] = i
        k += 1
    lower = k + 1
    for i in range(n - 2, -1, -1):
        while k >= lower:
            o = idx[k - 2]
            a = idx[k - 1]
            cr = ((pts[a, 0] - pts[o, 0]) * (pts[i, 1] - pts[o, 1])
                  - (pts[a, 1] - pts[o, 1]) * (pts[i, 0] - pts[o, 0]))
            if cr > eps:
                break
            k -= 1
        idx[k] = i
        k += 1
    return idx[:max(k - 1, 1)]


def _directed_hausdorff_loop(P, Q):
    # max over vertices p of P of dist(p, conv Q); Q counterclockwise.
    nq = Q.shape[0]
    worst = 0.0
    for i in range(P.shape[0]):
        px = P[i, 0]
        py = P[i, 1]
        inside = True
        best = np.inf
        for j in range(nq):
            ax = Q[j, 0]
            ay = Q[j, 1]
            bx = Q[(j + 1) % nq, 0]
            by = Q[(j + 1) % nq, 1]
            ex = bx - ax
            ey = by - ay
            if ex * (py - ay) - ey * (px - ax) < 0.0:
                inside = False
            ll = ex * ex + ey * ey
            t = 0.0
            if ll > 0.0:
                t = ((px - ax) * ex + (py - ay) * ey) / ll
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
            dx = px - (ax + t * ex)
            dy = py - (ay + t * ey)
            d = dx * dx + dy * dy
            if d < best:
                best = d
        if not inside and best > worst:
            worst = best
    return np.sqrt(worst)


def _directed_hausdorff_np(P, Q):
    A = Q
    B = np.roll(Q, -1, axis=0)
    E = B - A                                   # (m, 2)
    D = P[:, None, :] - A[None, :, :]            # (n, m, 2)
    side = E[None, :, 0] * D[..., 1] - E[None, :, 1] * D[..., 0]
    inside = np.all(side >= 0.0, axis=1)
    ll = np.einsum("ij,ij->i", E, E)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(ll > 0, np.einsum("nmk,mk->nm", D, E) / ll, 0.0)
    t = np.clip(t, 0.0, 1.0)
    R = D - t[..., None] * E[None, :, :]
    dist = np.sqrt(np.min(np.einsum("nmk,nmk->nm", R, R), axis=1))
    dist[inside] = 0.0
    return float(dist.max()) if dist.size else 0.0


_hull_chain_np = _hull_chain_loop
_hull_chain_nb = maybe_njit(_hull_chain_loop)
_directed_hausdorff_nb = maybe_njit(_directed_hausdorff_loop)

if USE_NUMBA:
    hull_chain = _hull_chain_nb
    directed_hausdorff = _directed_hausdorff_nb
else:
    hull_chain = _hull_chain_np
    directed_hausdorff = _directed_hausdorff_np
