"""Normality maps ``J = G^-1 F`` and ``J_a = G^-1 F_a``.

J sends x to the vector whose symplectic covector ``<., Jx>`` is the
support functional f_x; in the Euclidean plane with the standard form it is
the quarter turn ``(x1, x2) -> (-x2, x1)``. J_a does the same for the
antinorm, and the two are inverse up to sign: ``J_a J = J J_a = -I``.
"""

import numpy as np

from .antinorm import AntinormNorm
from .errors import NotSymplectomorphism
from .report import FAIL, CheckResult
from .semi_inner import SemiInnerSpace
from .symplectic import SymplecticForm


class NormalityMap:
    """J and J_a for a smooth norm and a symplectic form.

    ``method`` selects how dual norms of the base norm are evaluated
    (``"auto"`` uses closed forms when available, ``"numeric"`` forces the
    sphere ascent).
    """

    def __init__(self, space, form, method="auto"):
        if not isinstance(space, SemiInnerSpace):
            space = SemiInnerSpace(space)
        if not isinstance(form, SymplecticForm):
            form = SymplecticForm(form)
        self.space = space
        self.form = form
        self.method = method
        self.anti = AntinormNorm(space.norm, form, method=method)
        self.anti_space = SemiInnerSpace(self.anti)

    @property
    def norm(self):
        return self.space.norm

    @property
    def dim(self):
        return self.form.dim

    def j_map(self, x):
        return self.form.g_inv(self.space.support_functional(x))

    J = j_map

    def j_a_map(self, x, construction="maximizer"):
        """J_a x, either as ``-||x||_a y*(x)`` or as ``G^-1`` of the antinorm's f_x."""
        x = np.asarray(x, dtype=float)
        if construction == "gradient":
            return self.form.g_inv(self.anti_space.support_functional(x))
        if construction != "maximizer":
            raise ValueError(f"unknown construction {construction!r}")
        out = np.zeros(np.broadcast_shapes(x.shape))
        nz = np.any(x != 0.0, axis=-1)
        if np.any(nz):
            xs = x[nz]
            val, ys = self.anti.value_and_maximizer(xs)
            out[nz] = -val[..., None] * ys
        return out

    Ja = j_a_map

    def j_inverse(self, z):
        return -self.j_a_map(z)

    def sip_a(self, x, y):
        """Semi-inner product of the antinorm."""
        return self.anti_space.sip(x, y)


def sample_vectors(rng, n, dim, norm=None):
    """Gaussian directions rescaled to norm in [0.5, 2] (Euclidean if `norm` is None)."""
    X = rng.standard_normal((n, dim))
    nx = np.linalg.norm(X, axis=1) if norm is None else norm.value(X)
    return X / nx[:, None] * rng.uniform(0.5, 2.0, n)[:, None]


def check_map_identities(nm, rng, samples=200, tol=1e-6, sphere_tol=None, prefix="jmap"):
    """Measure the identities relating J, J_a, the norm and the antinorm.

    Returns a list of CheckResult, one per identity. Deviations are maximum
    absolute errors over samples whose norms lie in [0.5, 2].
    """
    sphere_tol = tol if sphere_tol is None else sphere_tol
    N, A = nm.norm, nm.anti
    W = nm.form
    X = sample_vectors(rng, samples, nm.dim, N)
    Y = sample_vectors(rng, samples, nm.dim, N)
    lam = rng.uniform(-3.0, 3.0, samples)

    JX, JY = nm.J(X), nm.J(Y)
    JaX, JaY = nm.Ja(X), nm.Ja(Y)
    sip, sip_a = nm.space.sip, nm.sip_a

    out = []

    def add(name, dev, t=tol, note=""):
        out.append(CheckResult(f"{prefix}.{name}", "normality-map", float(np.max(dev)), t, note=note))

    add("norm-to-antinorm", np.maximum(np.abs(A.value(JX) - N.value(X)),
                                       np.abs(N.value(JaX) - A.value(X))))

    # J maps the unit sphere onto the antinorm sphere: image lies on it and
    # every antinorm-sphere point has a unit preimage -J_a z
    S = X / N.value(X)[:, None]
    Z = X / A.value(X)[:, None]
    pre = nm.j_inverse(Z)
    add("sphere-image", np.concatenate([np.abs(A.value(nm.J(S)) - 1.0),
                                        np.abs(N.value(pre) - 1.0),
                                        np.linalg.norm(nm.J(pre) - Z, axis=1)]), sphere_tol)

    add("sip-as-form", np.maximum(np.abs(sip(X, Y) - W(X, JY)),
                                  np.abs(sip_a(X, Y) - W(X, JaY))))
    add("self-normal", np.maximum(np.abs(sip(JX, X)), np.abs(sip_a(JaX, X))))
    add("skew-J", np.abs(sip(JX, Y) + sip(JY, X)))
    add("skew-mixed", np.abs(sip_a(JX, Y) + sip(JaY, X)))
    add("homogeneous", np.linalg.norm(nm.J(lam[:, None] * X) - lam[:, None] * JX, axis=1))

    # J B = B_a: interior points land in B_a and B_a points pull back into B
    inner = X / N.value(X)[:, None] * rng.uniform(0.0, 1.0, samples)[:, None]
    inner_a = X / A.value(X)[:, None] * rng.uniform(0.0, 1.0, samples)[:, None]
    add("ball-image", np.maximum(np.maximum(A.value(nm.J(inner)) - 1.0, 0.0),
                                 np.maximum(N.value(nm.j_inverse(inner_a)) - 1.0, 0.0)),
        sphere_tol, note="read as J B = B_a")

    add("inverse", np.maximum(np.linalg.norm(nm.Ja(JX) + X, axis=1),
                              np.linalg.norm(nm.J(JaX) + X, axis=1)))
    add("sip-transfer", np.maximum(np.abs(sip(X, Y) - sip(JY, JaX)),
                                   np.abs(sip(X, JaY) + sip(Y, JaX))))
    return out


def check_ja_constructions(nm, rng, samples=200, tol=1e-8, prefix="jmap"):
    X = sample_vectors(rng, samples, nm.dim, nm.norm)
    dev = np.linalg.norm(nm.Ja(X, "gradient") - nm.Ja(X, "maximizer"), axis=1)
    return CheckResult(f"{prefix}.ja-constructions", "normality-map", float(dev.max()), tol)


def transfer_map(space, W1, W2, x):
    """``J_1^-1 L_2' L J_1 x`` for a symplectic isomorphism L from W1 to W2.

    With ``W1 = L^T W2 L`` the product ``L_2' L`` equals ``W2^-1 W1``, so the
    map depends only on the two forms: ``x -> F^-1(W1 W2^-1 f_x)``.
    """
    fx = space.support_functional(x)
    c = np.linalg.solve(W2.omega, fx.T).T @ W1.omega.T
    return space.riesz(c)


def forms_equivalent(space, W1, W2, L, rng, samples=1000, antipodal=100, check_tol=1e-10):
    """Compare two symplectic forms with respect to a norm.

    Returns ``(antinorm_gap, isometry_defect)``: the largest difference of
    the two antinorms on unit vectors and the largest norm change under
    ``J_1^-1 L_2' L J_1``. Both vanish exactly when the forms are
    equivalent.
    """
    if not isinstance(space, SemiInnerSpace):
        space = SemiInnerSpace(space)
    W1 = W1 if isinstance(W1, SymplecticForm) else SymplecticForm(W1)
    W2 = W2 if isinstance(W2, SymplecticForm) else SymplecticForm(W2)
    L = np.asarray(L, dtype=float)
    P = rng.standard_normal((32, W1.dim))
    Q = rng.standard_normal((32, W1.dim))
    gap = np.abs(W1(P, Q) - W2(P @ L.T, Q @ L.T))
    if gap.max() > check_tol * max(1.0, float(np.abs(W1(P, Q)).max())):
        raise NotSymplectomorphism("L does not carry the first form to the second")

    N = space.norm
    X = rng.standard_normal((samples, W1.dim))
    X /= N.value(X)[:, None]
    half = X[:antipodal]
    X = np.vstack([X, -half])
    A1 = AntinormNorm(N, W1)
    A2 = AntinormNorm(N, W2)
    antinorm_gap = float(np.max(np.abs(A1.value(X) - A2.value(X))))
    T = transfer_map(space, W1, W2, X)
    defect = float(np.max(np.abs(N.value(T) - 1.0)))
    return antinorm_gap, defect


def equivalence_results(name, space, W1, W2, L, rng, tol=1e-6, expect_equivalent=True, **kw):
    gap, defect = forms_equivalent(space, W1, W2, L, rng, **kw)
    expect = "pass" if expect_equivalent else FAIL
    return [CheckResult(f"{name}.antinorms", "form-equivalence", gap, tol, expect),
            CheckResult(f"{name}.isometry", "form-equivalence", defect, tol, expect)]
