"""Planar geometry kernel: convex polygons, hulls, halfspace intersections.

Vectors and covectors are plain float arrays with the coordinate axis last.
Set-valued constructions are restricted to the plane.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegenerateInput, DimensionMismatch, EmptyInterior, OriginNotInterior, Unbounded

ABS_TOL = 1e-9


def as_vector(x, dim=None):
    """Coerce `x` to a float array, checking finiteness and trailing dim."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        raise DimensionMismatch("expected a vector, got a scalar")
    if dim is not None and arr.shape[-1] != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {arr.shape[-1]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite coordinates")
    return arr


def angles(n, offset=0.0):
    return offset + 2.0 * np.pi * np.arange(n) / n


def unit_circle(n, offset=0.0):
    t = angles(n, offset)
    return np.column_stack([np.cos(t), np.sin(t)])


def _cross2(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


@dataclass(frozen=True, eq=False)
class Halfspace:
    """The set ``{x : c.x <= offset}``; normalized form has offset 1."""

    c: np.ndarray
    offset: float = 1.0

    def normalized(self):
        c = np.asarray(self.c, dtype=float)
        if self.offset <= 0.0:
            raise EmptyInterior("halfspace does not contain the origin in its interior")
        return c / self.offset

    def contains(self, x, tol=ABS_TOL):
        return np.asarray(x, dtype=float) @ np.asarray(self.c, dtype=float) <= self.offset + tol


@dataclass(frozen=True, eq=False)
class Polygon:
    """Convex polygon with counterclockwise, strictly convex vertex order."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise DimensionMismatch("polygon vertices must have shape (k, 2)")
        if v.shape[0] < 3:
            raise DegenerateInput("a polygon needs at least three vertices")
        e = np.roll(v, -1, axis=0) - v
        turns = _cross2(e, np.roll(e, -1, axis=0))
        scale = max(float(np.abs(v).max()), 1e-300)
        if np.any(turns <= 1e-14 * scale * scale):
            raise DegenerateInput("vertices are not in strictly convex counterclockwise order")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    def __len__(self):
        return self.vertices.shape[0]

    @classmethod
    def hull(cls, points):
        return convex_hull_2d(points)

    def edges(self):
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    def halfspaces(self):
        """Covectors ``c_i`` with ``P = {x : c_i.x <= 1 for all i}``."""
        v = self.vertices
        e = self.edges()
        normals = np.column_stack([e[:, 1], -e[:, 0]])
        offsets = np.einsum("ij,ij->i", normals, v)
        scale = np.linalg.norm(normals, axis=1) * np.abs(v).max()
        if np.any(offsets <= 1e-12 * scale):
            raise OriginNotInterior("origin is not an interior point of the polygon")
        return normals / offsets[:, None]

    def gauge(self, x):
        x = as_vector(x, 2)
        return np.maximum(x @ self.halfspaces().T, 0.0).max(axis=-1)

    def support(self, u):
        u = as_vector(u, 2)
        return (u @ self.vertices.T).max(axis=-1)

    def contains(self, x, tol=ABS_TOL):
        x = as_vector(x, 2)
        v = self.vertices
        e = self.edges()
        d = x[..., None, :] - v
        side = e[:, 0] * d[..., 1] - e[:, 1] * d[..., 0]
        lengths = np.linalg.norm(e, axis=1)
        return np.all(side >= -tol * lengths, axis=-1)

    def area(self):
        v = self.vertices
        return 0.5 * float(np.sum(_cross2(v, np.roll(v, -1, axis=0))))

    def scaled(self, lam):
        if lam == 0:
            raise DegenerateInput("cannot scale a polygon by zero")
        v = lam * self.vertices
        # a negative scalar is a half-turn, which keeps orientation
        return Polygon(v)

    def transformed(self, A):
        A = np.asarray(A, dtype=float)
        v = self.vertices @ A.T
        if np.linalg.det(A) < 0:
            v = v[::-1]
        return Polygon(v)

    def boundary_samples(self, n):
        """Points on the boundary: every vertex plus edge points, about `n` in all."""
        v = self.vertices
        e = self.edges()
        lengths = np.linalg.norm(e, axis=1)
        extra = max(n - len(v), 0)
        counts = np.floor(extra * lengths / lengths.sum()).astype(int)
        pieces = []
        for a, d, c in zip(v, e, counts):
            t = np.arange(c + 1) / (c + 1)
            pieces.append(a + t[:, None] * d)
        return np.concatenate(pieces)


def convex_hull_2d(points):
    """Minimal convex polygon containing `points`; vertices are input points.

    Raises DegenerateInput if fewer than three non-collinear points remain.
    """
    pts = as_vector(points, 2)
    if pts.ndim != 2 or pts.shape[0] < 3:
        raise DegenerateInput("need at least three points")
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    srt = np.ascontiguousarray(pts[order])
    scale = float(np.abs(srt).max())
    if scale == 0.0:
        raise DegenerateInput("all points coincide")
    idx = kernels.hull_chain(srt, 1e-13 * scale * scale)
    if len(idx) < 3:
        raise DegenerateInput("points are collinear")
    return Polygon(srt[np.asarray(idx)])


def halfspace_intersection_2d(halfspaces):
    """Polygon ``{x : c_i.x <= 1}`` via the hull of the dual points ``c_i``.

    `halfspaces` is a sequence of :class:`Halfspace` or an array of
    normalized covectors. Zero covectors (the whole plane) are ignored.
    """
    if isinstance(halfspaces, np.ndarray):
        C = as_vector(halfspaces, 2).reshape(-1, 2)
    else:
        C = np.array([h.normalized() if isinstance(h, Halfspace) else np.asarray(h, float)
                      for h in halfspaces], dtype=float).reshape(-1, 2)
    C = C[np.any(C != 0.0, axis=1)]
    if len(C) < 3:
        raise Unbounded("fewer than three nontrivial halfspaces")
    try:
        dual = convex_hull_2d(C)
    except DegenerateInput as exc:
        raise Unbounded("covectors are collinear") from exc
    a = dual.vertices
    b = np.roll(a, -1, axis=0)
    cr = _cross2(a, b)
    scale = np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1)
    if np.any(cr <= 1e-13 * scale):
        raise Unbounded("origin is not interior to the hull of the covectors")
    # vertex dual to edge (a, b) solves a.x = 1, b.x = 1
    x = (b[:, 1] - a[:, 1]) / cr
    y = (a[:, 0] - b[:, 0]) / cr
    # nearly parallel neighbours give nearly coincident vertices; re-hulling drops them
    return convex_hull_2d(np.column_stack([x, y]))


def hausdorff_2d(P, Q):
    """Symmetric Euclidean Hausdorff distance between two convex polygons."""
    pv = P.vertices if isinstance(P, Polygon) else np.asarray(P, float)
    qv = Q.vertices if isinstance(Q, Polygon) else np.asarray(Q, float)
    return max(float(kernels.directed_hausdorff(pv, qv)),
               float(kernels.directed_hausdorff(qv, pv)))


def radial_polygon(radial, n, offset=0.0):
    """Convex polygon through the points ``radial(u) * u`` of `n` unit directions."""
    u = unit_circle(n, offset)
    r = np.asarray(radial(u), dtype=float)
    return convex_hull_2d(r[:, None] * u)


def polygon_intersection(P, Q):
    """Intersection of two convex polygons that both contain the origin."""
    return halfspace_intersection_2d(np.vstack([P.halfspaces(), Q.halfspaces()]))


def inclusion_excess(P, Q):
    """Largest gauge excess of P's vertices over Q; <= 0 means P lies in Q."""
    return float(np.max(Q.gauge(P.vertices)) - 1.0)
