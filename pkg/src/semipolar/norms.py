"""Norm families with analytic values, gradients and dual norms.

All evaluations are vectorized: ``x`` may carry leading batch axes, the
coordinate axis is last. Dual norms are evaluated in closed form where one
exists and otherwise by multi-start ascent on the unit sphere.
"""

from enum import Enum

import numpy as np
from scipy.optimize import minimize

from .errors import DimensionMismatch, NonSmoothNorm, ZeroVector
from .geometry import as_vector


class Smoothness(str, Enum):
    SMOOTH = "smooth-strictly-convex"
    NON_SMOOTH = "non-smooth"


# projected ascent settings for numeric dual norms
ASCENT_STARTS = 16
ASCENT_MAX_ITER = 500
ASCENT_GTOL = 1e-10
ASCENT_SEED = 20240611
ARMIJO = 1e-4
STALL_RTOL = 1e-15


class NormModel:
    """Base class. Subclasses implement ``_value`` and, if smooth, ``_gradient``.

    Subclasses with a closed-form dual set ``closed_dual = True`` and
    implement ``_dual`` and ``_dual_maximizer``.
    """

    kind = "abstract"
    closed_dual = False

    def __init__(self, dim, smoothness):
        if int(dim) != dim or dim < 1:
            raise DimensionMismatch(f"dimension must be a positive integer, got {dim}")
        self.dim = int(dim)
        self.smoothness = Smoothness(smoothness)

    @property
    def smooth(self):
        return self.smoothness is Smoothness.SMOOTH

    def _check(self, x):
        return as_vector(x, self.dim)

    def value(self, x):
        return self._value(self._check(x))

    __call__ = value

    def gradient(self, x):
        """Gradient of the norm at x != 0 (a covector, 0-homogeneous in x)."""
        if not self.smooth:
            raise NonSmoothNorm(f"{self.kind} norm has no gradient")
        x = self._check(x)
        if np.any(np.all(x == 0.0, axis=-1)):
            raise ZeroVector("norm gradient is undefined at the origin")
        return self._gradient(x)

    def dual(self, phi, method="auto"):
        """Dual norm ``sup{phi(y) : ||y|| = 1}``."""
        phi = self._check(phi)
        if self._use_closed(method):
            return self._dual(phi)
        return self._numeric_dual(phi)[0]

    def dual_maximizer(self, phi, method="auto"):
        """Unit vector y with ``phi(y) = ||phi||*``; zero rows map to zero."""
        phi = self._check(phi)
        if self._use_closed(method):
            return self._dual_maximizer(phi)
        return self._numeric_dual(phi)[1]

    def dual_pair(self, phi, method="auto"):
        """``(dual norm, maximizer)`` from a single evaluation."""
        phi = self._check(phi)
        if self._use_closed(method):
            return self._dual(phi), self._dual_maximizer(phi)
        return self._numeric_dual(phi)

    def _use_closed(self, method):
        if method not in ("auto", "closed", "numeric"):
            raise ValueError(f"unknown method {method!r}")
        if method == "closed" and not self.closed_dual:
            raise NotImplementedError(f"{self.kind} norm has no closed-form dual")
        return self.closed_dual and method != "numeric"

    def _numeric_dual(self, phi):
        if not self.smooth:
            raise NonSmoothNorm(f"{self.kind} norm needs a dedicated dual solver")
        return sphere_ascent(self, phi)

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"


def sphere_ascent(norm, phi, starts=ASCENT_STARTS, max_iter=ASCENT_MAX_ITER,
                  gtol=ASCENT_GTOL, seed=ASCENT_SEED):
    """Maximize ``phi(y)`` over the unit sphere of a smooth norm.

    Gradient ascent on ``phi(y) / ||y||``; each iterate is pulled back
    radially to the sphere. Trial steps are Barzilai-Borwein lengths cut by
    Armijo backtracking. A row stops at gradient norm ``gtol * |phi|``, when
    its gain drops to rounding level, or after `max_iter` iterations.
    Every covector gets `starts` starting points (one along phi itself) and
    the best result is kept. Returns ``(values, maximizers)``.
    """
    phi = np.asarray(phi, dtype=float)
    batch = phi.shape[:-1]
    d = phi.shape[-1]
    P = phi.reshape(-1, d)
    m = P.shape[0]
    rng = np.random.default_rng(seed)
    Y = np.empty((m, starts, d))
    Y[:, 0, :] = P
    Y[:, 1:, :] = rng.standard_normal((starts - 1, d))
    zero = np.all(P == 0.0, axis=1)
    Y[zero, 0, :] = Y[zero, 1, :]
    Y = Y.reshape(-1, d)
    Y /= norm.value(Y)[:, None]
    Pf = np.repeat(P, starts, axis=0)
    scale = np.linalg.norm(Pf, axis=1)
    f = np.einsum("kd,kd->k", Pf, Y)
    step = 1.0 / np.where(scale > 0, scale, 1.0)
    Yprev = np.full_like(Y, np.nan)
    Gprev = np.full_like(Y, np.nan)
    act = np.flatnonzero(scale > 0)
    for _ in range(max_iter):
        if act.size == 0:
            break
        ya, pa, fa = Y[act], Pf[act], f[act]
        g = pa - fa[:, None] * norm.gradient(ya)
        gn2 = np.einsum("kd,kd->k", g, g)
        keep = np.sqrt(gn2) > gtol * scale[act]
        act, ya, pa, fa, g, gn2 = act[keep], ya[keep], pa[keep], fa[keep], g[keep], gn2[keep]
        ds = ya - Yprev[act]
        dg = g - Gprev[act]
        sy = np.abs(np.einsum("kd,kd->k", ds, dg))
        ss = np.einsum("kd,kd->k", ds, ds)
        bb_ok = np.isfinite(sy) & (sy > 0)
        T = np.where(bb_ok, ss / np.where(bb_ok, sy, 1.0), step[act])
        Yprev[act] = ya
        Gprev[act] = g
        done = np.zeros(act.size, dtype=bool)
        gain = np.zeros(act.size)
        for _ in range(40):
            todo = np.flatnonzero(~done)
            if todo.size == 0:
                break
            yt = ya[todo] + T[todo, None] * g[todo]
            yt /= norm.value(yt)[:, None]
            ft = np.einsum("kd,kd->k", pa[todo], yt)
            ok = ft >= fa[todo] + ARMIJO * T[todo] * gn2[todo]
            hit = todo[ok]
            gain[hit] = ft[ok] - fa[hit]
            Y[act[hit]] = yt[ok]
            f[act[hit]] = ft[ok]
            done[hit] = True
            T[todo[~ok]] *= 0.5
        step[act] = T
        # rows with no acceptable step, or a gain at rounding level, are done
        act = act[done & (gain > STALL_RTOL * np.abs(fa))]
    Y = Y.reshape(m, starts, d)
    f = f.reshape(m, starts)
    best = np.argmax(f, axis=1)
    vals = f[np.arange(m), best]
    ys = Y[np.arange(m), best]
    vals[zero] = 0.0
    ys[zero] = 0.0
    return vals.reshape(batch), ys.reshape(batch + (d,))


def _safe_unit(x, n):
    n = np.asarray(n)[..., None]
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(n > 0, x / np.where(n > 0, n, 1.0), 0.0)
    return out


class LpNorm(NormModel):
    kind = "lp"
    closed_dual = True

    def __init__(self, p, dim):
        p = float(p)
        if not p >= 1.0:
            raise ValueError(f"lp exponent must be >= 1, got {p}")
        smooth = Smoothness.SMOOTH if 1.0 < p < np.inf else Smoothness.NON_SMOOTH
        super().__init__(dim, smooth)
        self.p = p
        self.q = conjugate_exponent(p)

    @staticmethod
    def _lp(x, p):
        a = np.abs(x)
        if p == np.inf:
            return a.max(axis=-1)
        if p == 1.0:
            return a.sum(axis=-1)
        s = a.max(axis=-1)
        safe = np.where(s > 0, s, 1.0)
        return s * np.sum((a / safe[..., None]) ** p, axis=-1) ** (1.0 / p)

    def _value(self, x):
        return self._lp(x, self.p)

    def _gradient(self, x):
        # components with x_i = 0 get the continuous limit 0
        n = self._lp(x, self.p)
        return np.sign(x) * (np.abs(x) / n[..., None]) ** (self.p - 1.0)

    def _dual(self, phi):
        return self._lp(phi, self.q)

    def _dual_maximizer(self, phi):
        q = self.q
        n = self._lp(phi, q)
        if q == np.inf:
            y = np.zeros_like(phi)
            k = np.argmax(np.abs(phi), axis=-1)
            np.put_along_axis(y, k[..., None], np.sign(np.take_along_axis(phi, k[..., None], -1)), -1)
            return y
        if q == 1.0:
            return np.sign(phi)
        safe = np.where(n > 0, n, 1.0)[..., None]
        return np.sign(phi) * (np.abs(phi) / safe) ** (q - 1.0)

    def __repr__(self):
        return f"LpNorm(p={self.p:g}, dim={self.dim})"


def conjugate_exponent(p):
    if p == 1.0:
        return np.inf
    if p == np.inf:
        return 1.0
    return p / (p - 1.0)


class EllipsoidNorm(NormModel):
    """``sqrt(x^T Q x)`` for a symmetric positive-definite Q."""

    kind = "ellipsoid"
    closed_dual = True

    def __init__(self, Q):
        Q = np.array(Q, dtype=float)
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
            raise DimensionMismatch("Q must be square")
        if not np.allclose(Q, Q.T, rtol=0, atol=1e-12 * np.abs(Q).max()):
            raise ValueError("Q must be symmetric")
        np.linalg.cholesky(Q)  # raises LinAlgError unless positive definite
        super().__init__(Q.shape[0], Smoothness.SMOOTH)
        self.Q = Q
        self.Qinv = np.linalg.inv(Q)
        self.Q.setflags(write=False)
        self.Qinv.setflags(write=False)

    def _value(self, x):
        return np.sqrt(np.maximum(np.einsum("...i,ij,...j->...", x, self.Q, x), 0.0))

    def _gradient(self, x):
        return (x @ self.Q) / self._value(x)[..., None]

    def _dual(self, phi):
        return np.sqrt(np.maximum(np.einsum("...i,ij,...j->...", phi, self.Qinv, phi), 0.0))

    def _dual_maximizer(self, phi):
        return _safe_unit(phi @ self.Qinv, self._dual(phi))


class ProductNorm(NormModel):
    """``sqrt(K(x_U)^2 + L(x_V)^2)`` on the split ``x = (x_U, x_V)``."""

    kind = "product"

    def __init__(self, K, L):
        if K.dim != L.dim:
            raise DimensionMismatch("product norm needs equal subspace dimensions")
        if not (K.smooth and L.smooth):
            raise NonSmoothNorm("product norm factors must be smooth and strictly convex")
        super().__init__(K.dim + L.dim, Smoothness.SMOOTH)
        self.K = K
        self.L = L
        self.n = K.dim
        self.closed_dual = K.closed_dual and L.closed_dual

    def _split(self, x):
        return x[..., :self.n], x[..., self.n:]

    def _value(self, x):
        u, v = self._split(x)
        return np.hypot(self.K.value(u), self.L.value(v))

    def _gradient(self, x):
        u, v = self._split(x)
        gu = _scaled_gradient(self.K, u)
        gv = _scaled_gradient(self.L, v)
        return np.concatenate([gu, gv], axis=-1) / self._value(x)[..., None]

    def _dual(self, phi):
        a, b = self._split(phi)
        return np.hypot(self.K.dual(a), self.L.dual(b))

    def _dual_maximizer(self, phi):
        a, b = self._split(phi)
        ka, lb = self.K.dual(a), self.L.dual(b)
        D = np.hypot(ka, lb)
        ya = self.K.dual_maximizer(a) * ka[..., None]
        yb = self.L.dual_maximizer(b) * lb[..., None]
        return _safe_unit(np.concatenate([ya, yb], axis=-1), D)

    def __repr__(self):
        return f"ProductNorm({self.K!r}, {self.L!r})"


def _scaled_gradient(norm, x):
    # ||x|| grad||x||, continuous at 0 with value 0
    nz = np.any(x != 0.0, axis=-1)
    out = np.zeros_like(x)
    if np.any(nz):
        xs = x[nz]
        out[nz] = norm.value(xs)[..., None] * norm.gradient(xs)
    return out


class PComboNorm(NormModel):
    """``(sum_i ||x||_i^p)^(1/p)`` for 1 <= p < inf."""

    kind = "pcombo"

    def __init__(self, models, p):
        _check_terms(models)
        p = float(p)
        if not 1.0 <= p < np.inf:
            raise ValueError("pcombo exponent must lie in [1, inf); use SupComboNorm for inf")
        smooth = all(m.smooth for m in models)
        super().__init__(models[0].dim, Smoothness.SMOOTH if smooth else Smoothness.NON_SMOOTH)
        self.models = tuple(models)
        self.p = p

    def _values(self, x):
        return np.stack([m.value(x) for m in self.models])

    def _value(self, x):
        vals = self._values(x)
        if self.p == 1.0:
            return vals.sum(axis=0)
        s = vals.max(axis=0)
        safe = np.where(s > 0, s, 1.0)
        return s * np.sum((vals / safe) ** self.p, axis=0) ** (1.0 / self.p)

    def _gradient(self, x):
        vals = self._values(x)
        total = self._value(x)
        w = (vals / total) ** (self.p - 1.0)
        return sum(w[i][..., None] * m.gradient(x) for i, m in enumerate(self.models))

    def __repr__(self):
        return f"PComboNorm(p={self.p:g}, terms={len(self.models)})"


class SupComboNorm(NormModel):
    """Pointwise maximum of finitely many norms; always flagged non-smooth."""

    kind = "supcombo"

    def __init__(self, models):
        _check_terms(models)
        super().__init__(models[0].dim, Smoothness.NON_SMOOTH)
        self.models = tuple(models)

    def _value(self, x):
        return np.max(np.stack([m.value(x) for m in self.models]), axis=0)

    def _numeric_dual(self, phi):
        batch = phi.shape[:-1]
        P = phi.reshape(-1, self.dim)
        vals = np.zeros(len(P))
        ys = np.zeros_like(P)
        for k, c in enumerate(P):
            if np.any(c != 0.0):
                vals[k], ys[k] = intersection_maximize(self.models, c)
        return vals.reshape(batch), ys.reshape(batch + (self.dim,))

    def __repr__(self):
        return f"SupComboNorm(terms={len(self.models)})"


def intersection_maximize(models, c):
    """Maximize ``c.y`` over the intersection of the models' unit balls.

    SLSQP from several starts; the result is rescaled to be feasible, so
    the returned value never exceeds the true supremum by more than rounding.
    """
    c = np.asarray(c, dtype=float)

    def feasible(y):
        return y / max(1.0, max(float(m.value(y)) for m in models))

    starts = [c] + [m.dual_maximizer(c) for m in models if m.smooth]
    cons = [{"type": "ineq",
             "fun": (lambda y, m=m: 1.0 - float(m.value(y))),
             "jac": (lambda y, m=m: -m.gradient(y) if np.any(y != 0) else np.zeros_like(y))}
            for m in models]
    best_val, best_y = -np.inf, None
    for y0 in starts:
        y0 = feasible(y0) * 0.999
        res = minimize(lambda y: -float(c @ y), y0, jac=lambda y: -c, method="SLSQP",
                       constraints=cons, options={"ftol": 1e-15, "maxiter": 500})
        y = feasible(res.x)
        val = float(c @ y)
        if val > best_val:
            best_val, best_y = val, y
    return best_val, best_y


def _check_terms(models):
    if len(models) < 2:
        raise ValueError("a combination needs at least two norms")
    dims = {m.dim for m in models}
    if len(dims) != 1:
        raise DimensionMismatch(f"combined norms have different dimensions {sorted(dims)}")


def make_product_norm(K, L):
    return ProductNorm(K, L)


def make_pcombo_norm(models, p):
    """p-combination of norms; ``p = inf`` yields a non-smooth sup-combination."""
    if float(p) == np.inf:
        return SupComboNorm(models)
    return PComboNorm(models, p)


def euclidean(dim):
    return LpNorm(2.0, dim)
