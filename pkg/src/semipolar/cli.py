"""Command-line front end: ``semipolar eval | check | export``.

Exit codes: 0 success, 1 a check failed, 2 configuration error,
3 dimension mismatch.
"""

import argparse
import os
import sys

import numpy as np

from .config import body_from_config, form_from_config, norm_from_config, parse_overrides, parse_vector
from .errors import ConfigError, DimensionMismatch, SemipolarError
from .export import EXPORTS, boundary_curve, format_csv, write_csv
from .normality import NormalityMap
from .report import num17
from .semi_inner import SemiInnerSpace
from .suites import DEFAULT_SEED, DEFAULT_SET_SAMPLES, SUITE_NAMES, run_suite
from .symplectic import SymplecticForm

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_DIMENSION = 0, 1, 2, 3
OPS = {"norm": 1, "sip": 2, "antinorm": 1, "jmap": 1, "jamap": 1, "dual": 1}


def _text(value):
    value = np.asarray(value, dtype=float)
    if value.ndim == 0:
        return num17(value)
    return ",".join(num17(v) for v in value)


def _form_for(norm, form_cfg):
    if form_cfg is not None:
        return form_from_config(form_cfg)
    if norm.dim % 2:
        raise DimensionMismatch(f"odd dimension {norm.dim} carries no symplectic form")
    return SymplecticForm.standard(norm.dim // 2)


def evaluate(norm_cfg, op, vectors, form_cfg=None):
    """The value printed by ``semipolar eval`` as text."""
    if op not in OPS:
        raise ConfigError(f"unknown operation {op!r}; choose from {', '.join(OPS)}")
    if len(vectors) != OPS[op]:
        raise ConfigError(f"{op} takes {OPS[op]} vector argument(s), got {len(vectors)}")
    norm = norm_from_config(norm_cfg)
    vs = [parse_vector(v, norm.dim) for v in vectors]
    if op == "norm":
        return _text(norm.value(vs[0]))
    if op == "dual":
        return _text(norm.dual(vs[0]))
    if op == "sip":
        return _text(SemiInnerSpace(norm).sip(vs[0], vs[1]))
    nm = NormalityMap(norm, _form_for(norm, form_cfg))
    if op == "antinorm":
        return _text(nm.anti.value(vs[0]))
    if op == "jmap":
        return _text(nm.J(vs[0]))
    return _text(nm.Ja(vs[0]))


def _seed(args):
    env = os.environ.get("MINK_SEED")
    if env is None or env == "":
        return args.seed
    try:
        return int(env)
    except ValueError as exc:
        raise ConfigError(f"MINK_SEED must be an integer, got {env!r}") from exc


def cmd_eval(args):
    print(evaluate(args.norm, args.op, args.vectors, args.form))
    return EXIT_OK


def cmd_check(args):
    overrides = parse_overrides(args.tol_override)
    report = run_suite(args.suite, seed=_seed(args), samples=args.samples,
                       set_samples=args.set_samples, tol_overrides=overrides)
    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for r in report.failures:
        print(f"failed: {r.id} deviation {num17(r.deviation)} tolerance {num17(r.tolerance)}",
              file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_export(args):
    norm = norm_from_config(args.norm)
    form = form_from_config(args.form) if args.form else None
    if form is None and args.what in ("antiball", "jimage"):
        form = _form_for(norm, None)
    body = body_from_config(args.body) if args.body else None
    pts = boundary_curve(args.what, norm, form, body, samples=args.samples, clip=args.clip)
    if args.out:
        write_csv(pts, args.out)
    else:
        sys.stdout.write(format_csv(pts))
    return EXIT_OK


def _positive(text):
    n = int(text)
    if n < 3:
        raise argparse.ArgumentTypeError("need at least 3 samples")
    return n


def build_parser():
    p = argparse.ArgumentParser(prog="semipolar", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate one quantity")
    e.add_argument("norm", help="norm JSON (file path or inline object)")
    e.add_argument("op", choices=sorted(OPS))
    e.add_argument("vectors", nargs="+", help='comma-separated coordinates, e.g. "1,0"')
    e.add_argument("--form", help="symplectic form JSON (default: standard)")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("check", help="run a check suite and print a JSON report")
    c.add_argument("--suite", default="all", choices=SUITE_NAMES)
    c.add_argument("--seed", type=int, default=DEFAULT_SEED, help="overridden by MINK_SEED")
    c.add_argument("--samples", type=_positive, default=None,
                   help="scalar samples per check (default: each check's own count, 200 for most)")
    c.add_argument("--set-samples", type=_positive, default=DEFAULT_SET_SAMPLES,
                   help="boundary samples for set-valued checks")
    c.add_argument("--tol-override", action="append", metavar="PREFIX=TOL",
                   help="replace the tolerance of checks whose id starts with PREFIX (repeatable)")
    c.add_argument("--out", help="write the report here instead of stdout")
    c.set_defaults(func=cmd_check)

    x = sub.add_parser("export", help="write a boundary curve as CSV")
    x.add_argument("what", choices=EXPORTS)
    x.add_argument("--norm", required=True, help="norm JSON")
    x.add_argument("--form", help="symplectic form JSON (default: standard)")
    x.add_argument("--body", help="body JSON (semi-polars, optional for jimage)")
    x.add_argument("--samples", type=_positive, default=DEFAULT_SET_SAMPLES)
    x.add_argument("--clip", type=float, default=1e3, help="radius cap for unbounded curves")
    x.add_argument("--out", help="CSV path (default: stdout)")
    x.set_defaults(func=cmd_export)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DimensionMismatch as exc:
        print(f"dimension mismatch: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (ConfigError, SemipolarError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
