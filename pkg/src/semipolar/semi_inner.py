"""The semi-inner product ``[x, y] = f_y(x)`` induced by a smooth norm.

``f_y = ||y|| grad||y||`` is the unique norming functional at y, scaled so
that ``f_y(y) = ||y||^2``. Normality ``x -| y`` (Birkhoff orthogonality)
holds iff ``[y, x] = 0``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonSmoothNorm, ZeroVector
from .norms import NormModel

NORMALITY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SemiInnerSpace:
    norm: NormModel

    def __post_init__(self):
        if not self.norm.smooth:
            raise NonSmoothNorm("semi-inner products need a smooth strictly convex norm")

    @property
    def dim(self):
        return self.norm.dim

    def _vec(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise DimensionMismatch(f"expected dimension {self.dim}, got {x.shape[-1]}")
        return x

    def norm_of(self, x):
        return self.norm.value(x)

    def support_functional(self, y):
        """Covector ``f_y``; the zero vector maps to the zero covector."""
        y = self._vec(y)
        out = np.zeros(np.broadcast_shapes(y.shape))
        nz = np.any(y != 0.0, axis=-1)
        if np.any(nz):
            ys = y[nz]
            out[nz] = self.norm.value(ys)[..., None] * self.norm.gradient(ys)
        return out

    F = support_functional

    def sip(self, x, y):
        """``[x, y]``: linear in x, homogeneous in y."""
        x = self._vec(x)
        return np.einsum("...i,...i->...", x, self.support_functional(y))

    def riesz(self, phi, method="auto"):
        """The unique y with ``[., y] = phi`` (inverse of F)."""
        phi = self._vec(phi)
        n = self.norm.dual(phi, method=method)
        return n[..., None] * self.norm.dual_maximizer(phi, method=method)

    def dual_sip(self, x, y):
        """``[f_x, f_y]*`` on the dual space, realized as ``[y, x]``."""
        return self.sip(y, x)

    def is_normal(self, x, y, tol=NORMALITY_TOL):
        """``x -| y``, tested as ``|[y, x]| <= tol ||x|| ||y||``."""
        x = self._vec(x)
        y = self._vec(y)
        nx, ny = self.norm.value(x), self.norm.value(y)
        if np.any(nx == 0) or np.any(ny == 0):
            raise ZeroVector("normality is defined for nonzero vectors")
        return np.abs(self.sip(y, x)) <= tol * nx * ny

    def normality_defect(self, x, y, span=2.0, n=401, refine=True):
        """``max_t (||x|| - ||x + t y||)^+`` over ``t`` in a grid.

        The grid covers ``[-span, span] * ||x|| / ||y||`` with `n` points.
        With `refine`, the best grid cell is polished by golden-section
        search; ``t -> ||x + t y||`` is convex, so this finds the exact
        defect up to rounding. Rows of `x` and `y` are treated as pairs.
        """
        x = self._vec(x)
        y = self._vec(y)
        X = x.reshape(-1, self.dim)
        Y = np.broadcast_to(y, x.shape).reshape(-1, self.dim)
        nx, ny = self.norm.value(X), self.norm.value(Y)
        if np.any(nx == 0) or np.any(ny == 0):
            raise ZeroVector("normality is defined for nonzero vectors")
        ts = np.linspace(-span, span, n)[None, :] * (nx / ny)[:, None]
        vals = self.norm.value(X[:, None, :] + ts[..., None] * Y[:, None, :])
        k = np.argmin(vals, axis=1)
        rows = np.arange(len(X))
        best = vals[rows, k]
        if refine:
            lo = ts[rows, np.maximum(k - 1, 0)]
            hi = ts[rows, np.minimum(k + 1, n - 1)]
            best = np.minimum(best, _golden_min(lambda t: self.norm.value(X + t[:, None] * Y), lo, hi))
        out = np.maximum(nx - best, 0.0)
        return out.reshape(x.shape[:-1]) if x.ndim > 1 else float(out[0])

    def random_normal_pair(self, rng, size=None):
        """Random ``(x, y)`` with ``x -| y`` exactly: y is projected into ker f_x."""
        shape = (self.dim,) if size is None else (size, self.dim)
        x = rng.standard_normal(shape)
        r = rng.standard_normal(shape)
        fx = self.support_functional(x)
        coef = np.einsum("...i,...i->...", fx, r) / np.einsum("...i,...i->...", fx, x)
        return x, r - coef[..., None] * x


GOLDEN_ITERS = 90


def _golden_min(f, lo, hi, iters=GOLDEN_ITERS):
    """Batched golden-section minimum of convex scalar functions on ``[lo, hi]``."""
    r = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo.astype(float), hi.astype(float)
    c = b - r * (b - a)
    d = a + r * (b - a)
    fc, fd = f(c), f(d)
    best = np.minimum(fc, fd)
    for _ in range(iters):
        left = fc < fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        c_new = b - r * (b - a)
        d_new = a + r * (b - a)
        c, d = c_new, d_new
        fc, fd = f(c), f(d)
        best = np.minimum(best, np.minimum(fc, fd))
    return best
