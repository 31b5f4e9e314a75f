"""JSON configurations for norms, symplectic forms and bodies.

Norms::

    {"type": "lp", "p": 4, "dim": 2}
    {"type": "ellipsoid", "Q": [[2, 0], [0, 1]]}
    {"type": "product", "K": {...}, "L": {...}}
    {"type": "pcombo", "p": 2, "terms": [{...}, {...}]}
    {"type": "supcombo", "terms": [...]}
    {"type": "antinorm", "base": {...}, "form": {...}}

Forms: ``{"type": "standard", "n": 1}`` or ``{"type": "matrix", "omega": [[...]]}``.
Bodies: ``{"type": "polygon", "vertices": [[x, y], ...]}``,
``{"type": "ellipsoid", "Q": [[...]]}``, ``{"type": "ball", "norm": {...}, "radius": 1.0}``.
"""

import json
import math
from pathlib import Path

import numpy as np

from .antinorm import AntinormNorm
from .errors import ConfigError, DimensionMismatch, SemipolarError
from .norms import EllipsoidNorm, LpNorm, ProductNorm, SupComboNorm, make_pcombo_norm
from .polarity import EllipsoidBody, NormBall, PolygonBody
from .symplectic import SymplecticForm


def load_json(source):
    """A dict from a dict, a JSON string or a path to a JSON file."""
    if isinstance(source, dict):
        return source
    text = str(source)
    try:
        if not text.lstrip().startswith("{"):
            text = Path(text).read_text()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read configuration {source!r}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    return data


def _get(cfg, key, kind):
    if key not in cfg:
        raise ConfigError(f"{kind} configuration needs {key!r}")
    return cfg[key]


def _number(value, key):
    if isinstance(value, str) and value.lower() in ("inf", "infinity"):
        return math.inf
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key!r} must be a number") from exc


def _matrix(value, key):
    try:
        M = np.array(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key!r} must be a numeric matrix") from exc
    if M.ndim != 2 or not np.all(np.isfinite(M)):
        raise ConfigError(f"{key!r} must be a finite matrix")
    return M


def _build(fn, what):
    # constructor errors other than dimension clashes are configuration errors
    try:
        return fn()
    except (ConfigError, DimensionMismatch):
        raise
    except (SemipolarError, ValueError, TypeError, np.linalg.LinAlgError) as exc:
        raise ConfigError(f"invalid {what}: {exc}") from exc


def norm_from_config(cfg):
    cfg = load_json(cfg)
    kind = _get(cfg, "type", "norm")
    if kind == "lp":
        p = _number(_get(cfg, "p", "lp"), "p")
        dim = _get(cfg, "dim", "lp")
        if not isinstance(dim, int) or dim < 1:
            raise ConfigError("'dim' must be a positive integer")
        return _build(lambda: LpNorm(p, dim), "lp norm")
    if kind == "ellipsoid":
        Q = _matrix(_get(cfg, "Q", "ellipsoid"), "Q")
        return _build(lambda: EllipsoidNorm(Q), "ellipsoid norm")
    if kind == "product":
        K = norm_from_config(_get(cfg, "K", "product"))
        L = norm_from_config(_get(cfg, "L", "product"))
        return _build(lambda: ProductNorm(K, L), "product norm")
    if kind in ("pcombo", "supcombo"):
        terms = _get(cfg, "terms", kind)
        if not isinstance(terms, list):
            raise ConfigError("'terms' must be a list")
        models = [norm_from_config(t) for t in terms]
        if kind == "supcombo":
            return _build(lambda: SupComboNorm(models), "sup-combination")
        p = _number(_get(cfg, "p", "pcombo"), "p")
        return _build(lambda: make_pcombo_norm(models, p), "p-combination")
    if kind == "antinorm":
        base = norm_from_config(_get(cfg, "base", "antinorm"))
        form = form_from_config(_get(cfg, "form", "antinorm"))
        return _build(lambda: AntinormNorm(base, form), "antinorm")
    raise ConfigError(f"unknown norm type {kind!r}")


def form_from_config(cfg):
    cfg = load_json(cfg)
    kind = _get(cfg, "type", "form")
    if kind == "standard":
        n = _get(cfg, "n", "standard form")
        if not isinstance(n, int) or n < 1:
            raise ConfigError("'n' must be a positive integer")
        return SymplecticForm.standard(n)
    if kind == "matrix":
        omega = _matrix(_get(cfg, "omega", "matrix form"), "omega")
        return _build(lambda: SymplecticForm(omega), "symplectic form")
    raise ConfigError(f"unknown form type {kind!r}")


def body_from_config(cfg):
    cfg = load_json(cfg)
    kind = _get(cfg, "type", "body")
    if kind == "polygon":
        V = _matrix(_get(cfg, "vertices", "polygon"), "vertices")
        if V.shape[1] != 2:
            raise DimensionMismatch("polygon vertices must be planar")
        return _build(lambda: PolygonBody.from_vertices(V), "polygon")
    if kind == "ellipsoid":
        Q = _matrix(_get(cfg, "Q", "ellipsoid"), "Q")
        return _build(lambda: EllipsoidBody(Q).validate(), "ellipsoid body")
    if kind == "ball":
        norm = norm_from_config(_get(cfg, "norm", "ball"))
        radius = _number(cfg.get("radius", 1.0), "radius")
        return _build(lambda: NormBall(norm, radius), "ball")
    raise ConfigError(f"unknown body type {kind!r}")


def parse_vector(text, dim=None):
    """``"1,2.5,-3"`` to an array; DimensionMismatch if `dim` is given and differs."""
    try:
        v = np.array([float(t) for t in str(text).split(",")], dtype=float)
    except ValueError as exc:
        raise ConfigError(f"cannot parse vector {text!r}") from exc
    if not np.all(np.isfinite(v)):
        raise ConfigError(f"vector {text!r} has non-finite entries")
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatch(f"vector {text!r} has dimension {v.shape[0]}, expected {dim}")
    return v


def parse_overrides(items):
    """``["prefix=1e-4", ...]`` or a JSON object string to ``{prefix: tolerance}``."""
    out = {}
    for item in items or ():
        item = item.strip()
        if item.startswith("{"):
            data = load_json(item)
            for k, v in data.items():
                out[k] = _number(v, k)
            continue
        if "=" not in item:
            raise ConfigError(f"tolerance override {item!r} must look like prefix=value")
        k, v = item.split("=", 1)
        out[k.strip()] = _number(v, k)
    return out
