"""Symplectic bilinear forms ``<x, y> = x^T omega y`` on even-dimensional spaces.

``G`` identifies a vector x with the covector ``g_x = <., x>``, whose
coefficient list is ``omega @ x``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, SingularForm

SKEW_TOL = 1e-12
DET_TOL = 1e-12


def standard_omega(n):
    """``[[0, I], [-I, 0]]``: ``<e_i, e_{i+n}> = 1``."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


@dataclass(frozen=True, eq=False)
class SymplecticForm:
    omega: np.ndarray

    def __post_init__(self):
        w = np.array(self.omega, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise DimensionMismatch("omega must be a square matrix")
        if w.shape[0] % 2:
            raise SingularForm("symplectic forms exist only in even dimension")
        if not np.all(np.isfinite(w)):
            raise SingularForm("omega has non-finite entries")
        if np.max(np.abs(w + w.T)) > SKEW_TOL * max(1.0, np.abs(w).max()):
            raise SingularForm("omega is not skew-symmetric")
        if abs(np.linalg.det(w)) <= DET_TOL:
            raise SingularForm("omega is degenerate")
        w.setflags(write=False)
        object.__setattr__(self, "omega", w)

    @classmethod
    def standard(cls, n):
        return cls(standard_omega(n))

    @property
    def dim(self):
        return self.omega.shape[0]

    @property
    def n(self):
        return self.dim // 2

    def _vec(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise DimensionMismatch(f"expected dimension {self.dim}, got {x.shape[-1]}")
        return x

    def symp_eval(self, x, y):
        return np.einsum("...i,ij,...j->...", self._vec(x), self.omega, self._vec(y))

    __call__ = symp_eval

    def g_map(self, x):
        """Covector ``g_x = <., x>``."""
        return self._vec(x) @ self.omega.T

    def g_inv(self, c):
        """The x with ``g_map(x) = c``."""
        c = self._vec(c)
        return np.linalg.solve(self.omega, c.reshape(-1, self.dim).T).T.reshape(c.shape)

    def left_adjoint(self, L):
        """L' with ``<x, L y> = <L' x, y>``, i.e. ``omega^-1 L^T omega``."""
        L = self._mat(L)
        return np.linalg.solve(self.omega, L.T @ self.omega)

    def right_adjoint(self, L):
        """L'' with ``<L x, y> = <x, L'' y>``, i.e. ``omega^-1 L^T omega``.

        Skew-symmetry makes this coincide with the left adjoint.
        """
        L = self._mat(L)
        return np.linalg.solve(self.omega.T, L.T @ self.omega.T)

    def _mat(self, L):
        L = np.asarray(L, dtype=float)
        if L.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"expected a {self.dim}x{self.dim} matrix")
        return L

    def pullback(self, L):
        """The form ``(x, y) -> <L x, L y>``."""
        L = self._mat(L)
        return SymplecticForm(L.T @ self.omega @ L)

    def is_symplectic_map(self, other, L, tol=1e-10):
        """True when ``<x, y>_self = <L x, L y>_other`` for all x, y."""
        L = self._mat(L)
        diff = L.T @ other.omega @ L - self.omega
        return float(np.abs(diff).max()) <= tol * max(1.0, float(np.abs(self.omega).max()))

    def darboux_basis(self):
        return darboux_basis(self)

    def area_sum(self, x, y, basis=None):
        """Sum of the signed areas of (x, y) projected to the planes (e_i, e_{i+n}).

        Coordinates are taken in `basis` (a Darboux basis, default standard).
        """
        x = self._vec(x)
        y = self._vec(y)
        if basis is not None:
            B = np.asarray(basis.vectors).T
            x = np.linalg.solve(B, x)
            y = np.linalg.solve(B, y)
        n = self.n
        total = 0.0
        for i in range(n):
            total += np.linalg.det(np.array([[x[i], y[i]], [x[i + n], y[i + n]]]))
        return total


@dataclass(frozen=True, eq=False)
class DarbouxBasis:
    """Rows ``e_1..e_2n`` with ``<e_i, e_{i+n}> = 1`` and all other pairs 0 (up to sign)."""

    vectors: np.ndarray

    def gram(self, form):
        V = np.asarray(self.vectors)
        return V @ form.omega @ V.T

    def defect(self, form):
        """Max entrywise deviation of the Gram matrix from the standard omega."""
        n = len(self.vectors) // 2
        return float(np.abs(self.gram(form) - standard_omega(n)).max())


def darboux_basis(form):
    """Symplectic Gram-Schmidt starting from the standard basis.

    Each step takes the first remaining candidate e, pairs it with the
    candidate of largest ``|<e, c>|`` (scaled so the product is 1) and
    removes both directions from the remaining candidates.
    """
    w = form.omega
    d = form.dim
    cands = [row for row in np.eye(d)]
    es, fs = [], []
    scale = max(1.0, float(np.abs(w).max()))
    while cands:
        e = cands.pop(0)
        if np.linalg.norm(e) <= 1e-12:
            continue
        prods = np.array([e @ w @ c for c in cands])
        if prods.size == 0 or np.max(np.abs(prods)) <= 1e-12 * scale * np.linalg.norm(e):
            raise SingularForm("form is degenerate on the remaining subspace")
        k = int(np.argmax(np.abs(prods)))
        f = cands.pop(k) / prods[k]
        es.append(e)
        fs.append(f)
        # c -> c + <f, c> e - <e, c> f kills both pairings
        cands = [c + (f @ w @ c) * e - (e @ w @ c) * f for c in cands]
        cands = [c for c in cands if np.linalg.norm(c) > 1e-10]
    if len(es) != d // 2:
        raise SingularForm("could not complete a Darboux basis")
    return DarbouxBasis(np.array(es + fs))
