"""Convex bodies, Euclidean polars and semi-polar sets.

For a semi-inner product space the right semi-polar of a point m is the
halfspace ``m° = {x : [x, m] <= 1} = {x : f_m(x) <= 1}``; the left one,
``m_∘ = {x : [m, x] <= 1}``, is only star-shaped in general. Set-valued
constructions are planar; in higher dimension bodies expose gauge, support
and membership only.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, OriginNotInterior, ZeroVector
from .geometry import (Halfspace, Polygon, angles, as_vector, convex_hull_2d,
                       halfspace_intersection_2d, unit_circle)

VALIDATION_DIRECTIONS = 64
CLIP_RADIUS = 1e3


class ConvexBody:
    """A convex body with the origin in its interior."""

    kind = "abstract"
    dim = None

    def gauge(self, x):
        raise NotImplementedError

    def support(self, c):
        """Euclidean support function ``sup{c.x : x in K}``."""
        raise NotImplementedError

    def contains(self, x, tol=1e-9):
        return self.gauge(x) <= 1.0 + tol

    def radial(self, u):
        return 1.0 / self.gauge(u)

    def boundary_samples(self, n):
        """About `n` boundary points in counterclockwise order (planar bodies)."""
        self._planar()
        u = unit_circle(n)
        return u / self.gauge(u)[:, None]

    def polygon(self, n=512):
        """Inscribed polygon through boundary samples."""
        return convex_hull_2d(self.boundary_samples(n))

    def scaled(self, lam):
        return TransformedBody(lam * np.eye(self.dim), self)

    def transformed(self, A):
        return TransformedBody(A, self)

    def _planar(self):
        if self.dim != 2:
            raise DimensionMismatch("set-valued constructions are planar")

    def validate(self):
        """Origin-interiority test: finite positive gauge and positive support along 64 directions."""
        rng = np.random.default_rng(0)
        if self.dim == 2:
            U = unit_circle(VALIDATION_DIRECTIONS, 0.1)
        else:
            U = rng.standard_normal((VALIDATION_DIRECTIONS, self.dim))
        g = self.gauge(U)
        h = self.support(U)
        if not (np.all(np.isfinite(g)) and np.all(g > 0) and np.all(h > 0)):
            raise OriginNotInterior(f"{self.kind} body does not contain the origin in its interior")
        return self


@dataclass(frozen=True, eq=False)
class PolygonBody(ConvexBody):
    poly: Polygon
    kind = "polygon"
    dim = 2

    def __post_init__(self):
        self.poly.halfspaces()  # raises OriginNotInterior

    @classmethod
    def from_vertices(cls, vertices):
        return cls(Polygon(vertices))

    @property
    def vertices(self):
        return self.poly.vertices

    def gauge(self, x):
        return self.poly.gauge(x)

    def support(self, c):
        return self.poly.support(c)

    def boundary_samples(self, n):
        return self.poly.boundary_samples(n)

    def polygon(self, n=None):
        return self.poly

    def scaled(self, lam):
        return PolygonBody(self.poly.scaled(lam))

    def transformed(self, A):
        return PolygonBody(self.poly.transformed(A))


@dataclass(frozen=True, eq=False)
class EllipsoidBody(ConvexBody):
    """``{x : x^T Q x <= 1}`` for symmetric positive definite Q."""

    Q: np.ndarray
    kind = "ellipsoid"

    def __post_init__(self):
        Q = np.array(self.Q, dtype=float)
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
            raise DimensionMismatch("Q must be square")
        if not np.allclose(Q, Q.T, rtol=0, atol=1e-12 * np.abs(Q).max()):
            raise ValueError("Q must be symmetric")
        np.linalg.cholesky(Q)
        Q.setflags(write=False)
        object.__setattr__(self, "Q", Q)
        Qinv = np.linalg.inv(Q)
        Qinv.setflags(write=False)
        object.__setattr__(self, "Qinv", Qinv)

    @property
    def dim(self):
        return self.Q.shape[0]

    def gauge(self, x):
        x = as_vector(x, self.dim)
        return np.sqrt(np.maximum(np.einsum("...i,ij,...j->...", x, self.Q, x), 0.0))

    def support(self, c):
        c = as_vector(c, self.dim)
        return np.sqrt(np.maximum(np.einsum("...i,ij,...j->...", c, self.Qinv, c), 0.0))

    def scaled(self, lam):
        return EllipsoidBody(self.Q / lam ** 2)

    def transformed(self, A):
        Ainv = np.linalg.inv(np.asarray(A, dtype=float))
        return EllipsoidBody(Ainv.T @ self.Q @ Ainv)


@dataclass(frozen=True, eq=False)
class NormBall(ConvexBody):
    """``radius`` times the unit ball of a norm."""

    norm: object
    radius: float = 1.0
    kind = "norm_ball"

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("ball radius must be positive")

    @property
    def dim(self):
        return self.norm.dim

    def gauge(self, x):
        return self.norm.value(x) / self.radius

    def support(self, c):
        return self.radius * self.norm.dual(c)

    def scaled(self, lam):
        return NormBall(self.norm, self.radius * abs(lam))


@dataclass(frozen=True, eq=False)
class TransformedBody(ConvexBody):
    """The image ``A K`` of a body under an invertible linear map."""

    A: np.ndarray
    body: ConvexBody
    kind = "transformed"

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        if A.shape != (self.body.dim, self.body.dim):
            raise DimensionMismatch("map and body dimensions differ")
        Ainv = np.linalg.inv(A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "Ainv", Ainv)

    @property
    def dim(self):
        return self.body.dim

    def gauge(self, x):
        return self.body.gauge(as_vector(x, self.dim) @ self.Ainv.T)

    def support(self, c):
        return self.body.support(as_vector(c, self.dim) @ self.A)


def ball(norm, radius=1.0):
    return NormBall(norm, radius)


def bisection_gauge(body, x, iters=200):
    """Gauge by bisection on membership; an oracle independent of closed forms."""
    x = np.asarray(x, dtype=float)
    lo, hi = 0.0, 1.0
    while not body.contains(x / hi, tol=0.0):
        hi *= 2.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if body.contains(x / mid, tol=0.0):
            hi = mid
        else:
            lo = mid
    return hi


# --- support functions --------------------------------------------------------

def support_h(body, u, space):
    """Normed support function ``sup{[x, u] : x in K}``.

    ``[., u] = f_u`` is linear, so this is the Euclidean support function of
    K at the covector f_u.
    """
    u = np.asarray(u, dtype=float)
    if np.any(np.all(u == 0.0, axis=-1)):
        raise ZeroVector("normed support function needs u != 0")
    return body.support(space.support_functional(u))


def support_ratio(body, u, space):
    """``||u|| h(K, f_u) / h(B, f_u)``: the same quantity through Euclidean supports only."""
    c = space.support_functional(u)
    return space.norm.value(u) * body.support(c) / space.norm.dual(c)


# --- Euclidean polarity --------------------------------------------------------

def euclidean_polar(body):
    """``K* = {y : x.y <= 1 for all x in K}``."""
    if isinstance(body, PolygonBody):
        return PolygonBody(halfspace_intersection_2d(body.vertices))
    if isinstance(body, EllipsoidBody):
        return EllipsoidBody(body.Qinv)
    if isinstance(body, TransformedBody):
        # (A K)* = A^-T K*
        return TransformedBody(body.Ainv.T, euclidean_polar(body.body))
    if isinstance(body, NormBall):
        return DualNormBall(body.norm, 1.0 / body.radius)
    raise TypeError(f"no polar for {body.kind} bodies")


@dataclass(frozen=True, eq=False)
class DualNormBall(ConvexBody):
    """``radius`` times the unit ball of the dual norm of `norm`."""

    norm: object
    radius: float = 1.0
    kind = "dual_norm_ball"

    @property
    def dim(self):
        return self.norm.dim

    def gauge(self, x):
        return self.norm.dual(x) / self.radius

    def support(self, c):
        return self.radius * self.norm.value(c)


# --- semi-polars ---------------------------------------------------------------

def semipolar_right_point(space, m):
    """The halfspace ``m° = {x : f_m(x) <= 1}``; m = 0 gives the whole space (c = 0)."""
    m = np.asarray(m, dtype=float)
    return Halfspace(space.support_functional(m))


def semipolar_right_set(space, body, n=512):
    """``M° = intersection of m° over M`` from `n` boundary samples of M.

    Points inside M give weaker constraints than the boundary point on their
    ray (``f_{tm} = t f_m``), so the boundary suffices. Since ``[x, m]`` is
    nonlinear in m, edge interiors of polygons are sampled too.
    """
    body._planar()
    pts = body.boundary_samples(n) if isinstance(body, ConvexBody) else np.asarray(body, float)
    return PolygonBody(halfspace_intersection_2d(space.support_functional(pts)))


def semipolar_right_of_points(space, pts):
    """``∩ m°`` over an explicit point list (e.g. boundary samples of a star region)."""
    return PolygonBody(halfspace_intersection_2d(space.support_functional(np.asarray(pts, float))))


class StarRegion:
    """``{x : sup_{m in M} [m, x] <= 1}`` described by its radial function.

    `support` maps covectors c to ``sup{c.m : m in M}``; since
    ``[m, x] = f_x(m)`` the region is ``{x : support(f_x) <= 1}`` and, by
    homogeneity in x, ``radial(u) = 1 / support(f_u)^+`` (infinite when the
    support is not positive).
    """

    def __init__(self, space, support, dim):
        self.space = space
        self._support = support
        self.dim = dim

    @classmethod
    def of_point(cls, space, m):
        m = np.asarray(m, dtype=float)
        return cls(space, lambda c: c @ m, m.shape[-1])

    @classmethod
    def of_points(cls, space, pts):
        pts = np.asarray(pts, dtype=float)
        return cls(space, lambda c: (c @ pts.T).max(axis=-1), pts.shape[-1])

    @classmethod
    def of_body(cls, space, body):
        return cls(space, body.support, body.dim)

    def level(self, x):
        """``sup_m [m, x]``; the region is the sublevel set at 1."""
        return self._support(self.space.support_functional(x))

    def contains(self, x, tol=0.0):
        return self.level(x) <= 1.0 + tol

    def radial(self, u):
        s = self.level(u)
        with np.errstate(divide="ignore"):
            return np.where(s > 0, 1.0 / np.where(s > 0, s, 1.0), np.inf)

    def bounded(self, n=720):
        return bool(np.all(np.isfinite(self.radial(unit_circle(n)))))

    def trace(self, n=512, clip=CLIP_RADIUS, offset=0.0):
        """Boundary points along `n` directions, radii clipped at `clip`."""
        u = unit_circle(n, offset)
        r = np.minimum(self.radial(u), clip)
        return r[:, None] * u


def semipolar_left_point(space, m):
    return StarRegion.of_point(space, m)


def semipolar_left_set(space, body):
    """``M_∘``; for polygons the sup over M is attained at a vertex."""
    if isinstance(body, PolygonBody):
        return StarRegion.of_points(space, body.vertices)
    return StarRegion.of_body(space, body)


def semipolar_left_membership(space, body, x):
    return semipolar_left_set(space, body).contains(x)


# --- star-shaped polylines -----------------------------------------------------

class StarCurve:
    """Closed curve around the origin given by points, one per ray.

    Used for images of boundaries under J and J_a, which need not be
    convex. The gauge is found by intersecting the ray through x with the
    polyline edge spanning its angle.
    """

    def __init__(self, points):
        pts = as_vector(points, 2)
        th = np.arctan2(pts[:, 1], pts[:, 0])
        order = np.argsort(th, kind="stable")
        self.points = pts[order]
        self.theta = th[order]

    def gauge(self, x):
        x = as_vector(x, 2)
        flat = x.reshape(-1, 2)
        t = np.arctan2(flat[:, 1], flat[:, 0])
        k = np.searchsorted(self.theta, t) % len(self.theta)
        a = self.points[k - 1]
        b = self.points[k]
        # boundary point on segment a + s (b - a) along the ray of x: x = r p
        e = b - a
        cr_ex = e[:, 0] * flat[:, 1] - e[:, 1] * flat[:, 0]
        cr_ae = a[:, 0] * e[:, 1] - a[:, 1] * e[:, 0]
        # p = lam x with lam = cross(a, e) / cross(x, e)
        with np.errstate(divide="ignore", invalid="ignore"):
            lam = cr_ae / -cr_ex
            g = np.where(np.all(flat == 0, axis=1), 0.0, 1.0 / lam)
        return g.reshape(x.shape[:-1])

    def hull(self):
        return convex_hull_2d(self.points)

    def convexity_deficiency(self):
        """Largest relative radial gap between the curve and its convex hull."""
        H = self.hull()
        return float(np.max(1.0 - H.gauge(self.points)))


def polyline_closed(points):
    """Append the first point so the polyline is a closed curve."""
    pts = np.asarray(points, dtype=float)
    return np.vstack([pts, pts[:1]])


__all__ = [
    "CLIP_RADIUS", "ConvexBody", "DualNormBall", "EllipsoidBody", "NormBall", "PolygonBody",
    "StarCurve", "StarRegion", "TransformedBody", "angles", "ball", "bisection_gauge",
    "euclidean_polar", "polyline_closed", "semipolar_left_membership", "semipolar_left_point",
    "semipolar_left_set", "semipolar_right_of_points", "semipolar_right_point",
    "semipolar_right_set", "support_h", "support_ratio",
]
