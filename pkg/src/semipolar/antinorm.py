"""Antinorms ``||x||_a = sup{<y, x> : ||y|| = 1}`` of a norm under a symplectic form.

Since ``<y, x> = (omega x) . y`` the antinorm is the dual norm of the
covector ``g_x = omega x``. Its own dual norm has the closed form
``||phi||_a* = ||omega^-T phi||``, which makes the antinorm of the antinorm
computable without any optimization.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import DimensionMismatch, ZeroVector
from .norms import (EllipsoidNorm, NormModel, SupComboNorm, _safe_unit,
                    intersection_maximize, make_pcombo_norm)
from .symplectic import SymplecticForm

PERP_TOL = 1e-6


class AntinormNorm(NormModel):
    """The antinorm of `base` with respect to `form`, usable as a norm itself.

    Value and maximizer go through the base dual norm. The gradient is
    ``-omega y*`` (envelope principle), so the antinorm is smooth whenever
    the base is smooth and strictly convex.
    """

    kind = "antinorm"

    def __init__(self, base, form, method="auto"):
        if not isinstance(form, SymplecticForm):
            form = SymplecticForm(form)
        if base.dim != form.dim:
            raise DimensionMismatch(f"norm has dimension {base.dim}, form {form.dim}")
        super().__init__(base.dim, base.smoothness)
        self.base = base
        self.form = form
        # how the base dual norm is evaluated: "auto", "closed" or "numeric"
        self.method = method
        # ||phi||_a* = ||omega^-T phi|| needs only base values; its maximizer
        # needs the base gradient
        self.closed_dual = base.smooth
        self._winv_t = np.linalg.inv(form.omega).T

    def _value(self, x):
        return self.base.dual(self.form.g_map(x), method=self.method)

    def maximizer(self, x):
        """Unit vector y* of the base norm with ``<y*, x> = ||x||_a``."""
        x = self._check(x)
        if np.any(np.all(x == 0.0, axis=-1)):
            raise ZeroVector("antinorm maximizer is undefined at the origin")
        return self.base.dual_maximizer(self.form.g_map(x), method=self.method)

    def value_and_maximizer(self, x):
        x = self._check(x)
        if np.any(np.all(x == 0.0, axis=-1)):
            raise ZeroVector("antinorm maximizer is undefined at the origin")
        return self.base.dual_pair(self.form.g_map(x), method=self.method)

    def _gradient(self, x):
        return -self.maximizer(x) @ self.form.omega.T

    def _dual(self, phi):
        return self.base.value(phi @ self._winv_t.T)

    def _dual_maximizer(self, phi):
        w = phi @ self._winv_t.T
        n = self.base.value(w)
        nz = n > 0
        c = np.zeros_like(w)
        if np.any(nz):
            c[nz] = self.base.gradient(w[nz])
        x = self.form.g_inv(c)
        return _safe_unit(x, self.value(x))

    def __repr__(self):
        return f"AntinormNorm({self.base!r}, method={self.method!r})"


def make_antinorm(base, form):
    return AntinormNorm(base, form)


def antinorm_value(A, x):
    return A.value(x)


def antinorm_maximizer(A, x):
    return A.maximizer(x)


def antinorm_gradient(A, x):
    return A.gradient(x)


def perp_functional(norm, x, phi, tol=PERP_TOL):
    """``x`` is perpendicular to the covector ``phi``: ``|phi(x)| = ||phi||* ||x||``.

    Equality is tested relative to ``||phi||* ||x||``; `norm` may be a
    NormModel or a SemiInnerSpace.
    """
    norm = getattr(norm, "norm", norm)
    x = np.asarray(x, dtype=float)
    phi = np.asarray(phi, dtype=float)
    nx = norm.value(x)
    nphi = norm.dual(phi)
    if np.any(nx == 0) or np.any(nphi == 0):
        raise ZeroVector("perpendicularity needs nonzero arguments")
    rhs = nphi * nx
    return np.abs(np.abs(np.einsum("...i,...i->...", phi, x)) - rhs) <= tol * rhs


@dataclass(frozen=True)
class ComboBounds:
    lhs: float
    inf_term: float
    pnorm_term: float

    @property
    def slack_first(self):
        return self.inf_term - self.lhs

    @property
    def slack_second(self):
        return self.pnorm_term - self.inf_term


def combo_antinorm_bounds(models, p, form, x):
    """Both sides of ``||x||_a <= min_i ||x||_{i,a} <= (sum_i ||x||_{i,a}^p)^(1/p)``.

    `lhs` is the antinorm of the p-combined norm. For ``p = inf`` it is a
    direct maximization over the intersection of the unit balls.
    """
    x = np.asarray(x, dtype=float)
    combined = make_pcombo_norm(models, p)
    lhs = float(_combo_antinorm(combined, form, x))
    antis = np.array([float(AntinormNorm(m, form).value(x)) for m in models])
    p = float(p)
    pnorm = antis.max() if p == np.inf else float(np.sum(antis ** p) ** (1.0 / p))
    return ComboBounds(lhs, float(antis.min()), float(pnorm))


def _combo_antinorm(combined, form, x):
    if not isinstance(form, SymplecticForm):
        form = SymplecticForm(form)
    if isinstance(combined, SupComboNorm):
        c = form.g_map(x)
        if not np.any(c != 0):
            return 0.0
        return intersection_maximize(combined.models, c)[0]
    return AntinormNorm(combined, form).value(x)


@dataclass(frozen=True)
class SupComboLower:
    sup_anti: float
    radius: float
    anti: float

    @property
    def slack(self):
        return self.anti - self.sup_anti / self.radius


def union_radius(models):
    """``sup{max_j ||y||_j : y in union of the unit balls}``.

    Closed form for ellipsoids (largest generalized eigenvalue), otherwise
    a direction sweep polished by a local maximization.
    """
    best = 0.0
    for mi in models:
        for mj in models:
            best = max(best, _ratio_sup(mi, mj))
    return best


def _ratio_sup(mi, mj):
    # sup ||y||_j over ||y||_i <= 1
    if mi is mj:
        return 1.0
    if isinstance(mi, EllipsoidNorm) and isinstance(mj, EllipsoidNorm):
        lam = np.linalg.eigvals(np.linalg.solve(mi.Q, mj.Q)).real.max()
        return float(np.sqrt(lam))
    d = mi.dim
    rng = np.random.default_rng(0)
    U = rng.standard_normal((4096, d))
    r = mj.value(U) / mi.value(U)
    k = int(np.argmax(r))
    res = minimize(lambda u: -float(mj.value(u) / mi.value(u)), U[k], method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000})
    return float(max(r[k], -res.fun))


def sup_combo_antinorm_lower(models, form, x):
    """Terms of ``max_i ||x||_{i,a} / radius <= ||x||_a`` for the sup-combination."""
    x = np.asarray(x, dtype=float)
    antis = [float(AntinormNorm(m, form).value(x)) for m in models]
    anti = float(_combo_antinorm(SupComboNorm(models), form, x))
    return SupComboLower(max(antis), union_radius(models), anti)


__all__ = [
    "AntinormNorm", "ComboBounds", "SupComboLower", "antinorm_gradient", "antinorm_maximizer",
    "antinorm_value", "combo_antinorm_bounds", "make_antinorm", "perp_functional",
    "sup_combo_antinorm_lower", "union_radius",
]
