"""Planar boundary curves as closed CSV polylines."""

import numpy as np

from .errors import ConfigError, DimensionMismatch
from .geometry import unit_circle
from .normality import NormalityMap
from .polarity import (CLIP_RADIUS, ConvexBody, polyline_closed, semipolar_left_set,
                       semipolar_right_set)
from .report import num17
from .semi_inner import SemiInnerSpace

EXPORTS = ("ball", "antiball", "semipolar-left", "semipolar-right", "jimage")


def _sphere(norm, n):
    u = unit_circle(n)
    return u / norm.value(u)[:, None]


def boundary_curve(what, norm, form=None, body=None, samples=360, clip=CLIP_RADIUS):
    """Closed polyline of ``samples + 1`` points, radially ordered.

    ``ball`` and ``antiball`` trace the unit spheres of the norm and of its
    antinorm, ``jimage`` the image of the unit sphere (or of the body's
    boundary) under J, and the semi-polar curves those of `body`.
    Unbounded left semi-polars are clipped at radius `clip`.
    """
    if norm.dim != 2:
        raise DimensionMismatch("curves are exported for planar norms only")
    if body is not None and body.dim != 2:
        raise DimensionMismatch("curves are exported for planar bodies only")
    if what == "ball":
        pts = _sphere(norm, samples)
    elif what in ("antiball", "jimage"):
        if form is None:
            raise ConfigError(f"{what} needs a symplectic form")
        nm = NormalityMap(norm, form)
        if what == "antiball":
            pts = _sphere(nm.anti, samples)
        else:
            src = _sphere(norm, samples) if body is None else body.boundary_samples(samples)
            pts = nm.J(src)
    elif what in ("semipolar-left", "semipolar-right"):
        if body is None:
            raise ConfigError(f"{what} needs a body")
        space = SemiInnerSpace(norm)
        if what == "semipolar-left":
            pts = semipolar_left_set(space, body).trace(samples, clip)
        else:
            # the halfspace construction uses the full sample count; the curve is resampled radially
            right = semipolar_right_set(space, body, samples)
            pts = ConvexBody.boundary_samples(right, samples)
    else:
        raise ConfigError(f"unknown export {what!r}; choose from {', '.join(EXPORTS)}")
    return polyline_closed(pts)


def format_csv(points):
    return "".join(f"{num17(x)},{num17(y)}\n" for x, y in np.asarray(points, dtype=float))


def write_csv(points, path):
    text = format_csv(points)
    with open(path, "w", newline="") as fh:
        fh.write(text)
    return text
