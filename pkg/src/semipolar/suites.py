"""Named check suites assembled into a :class:`CheckReport`.

Every check group draws from its own generator seeded by ``(seed, group)``,
so a group produces the same numbers whether it runs alone or inside
``all``.
"""

import zlib

import numpy as np

from . import checks
from .norms import LpNorm, euclidean
from .report import CheckReport, CheckResult
from .semi_inner import SemiInnerSpace

DEFAULT_SEED = 42
DEFAULT_SET_SAMPLES = 512


def _rng(seed, group):
    return np.random.default_rng([int(seed), zlib.crc32(group.encode())])


def _axioms(seed, samples, set_samples):
    rng = _rng(seed, "axioms")
    out = []
    for name, norm in checks.norm_families(rng):
        out.extend(checks.check_semi_inner_family(name, norm, rng, samples or 1000))
    out.extend(checks.check_asymmetry(_rng(seed, "asymmetry")))
    return out


def _antinorm(seed, samples, set_samples):
    out = checks.check_double_antinorm(_rng(seed, "double-antinorm"), samples or 200)
    out.extend(checks.check_self_antinormal(_rng(seed, "self-antinormal"), samples or 100))
    out.extend(checks.check_combinations(_rng(seed, "combinations")))
    return out


def _normality_maps(seed, samples, set_samples):
    return checks.check_normality_maps(_rng(seed, "normality-maps"), samples or 200)


def _form_equivalence(seed, samples, set_samples):
    return checks.check_form_equivalence(_rng(seed, "form-equivalence"))


def _polarity(seed, samples, set_samples):
    out = checks.check_euclidean_polarity(_rng(seed, "euclidean-polarity"))
    for name, norm in (("l4", LpNorm(4, 2)), ("l3", LpNorm(3, 2)), ("euclidean", euclidean(2))):
        space = SemiInnerSpace(norm)
        out.extend(checks.check_semipolar_rules(space, _rng(seed, f"semipolar-{name}"), set_samples, name))
    out.extend(checks.check_refinement(SemiInnerSpace(LpNorm(4, 2)), _rng(seed, "refinement"), set_samples))
    return out


def _semipolar(seed, samples, set_samples):
    out = checks.check_characterization(_rng(seed, "characterization"))
    out.extend(checks.check_jmap_polarity_suite(_rng(seed, "jmap-polarity"), set_samples))
    return out


SUITES = {
    "axioms": _axioms,
    "antinorm": _antinorm,
    "normality-maps": _normality_maps,
    "form-equivalence": _form_equivalence,
    "polarity": _polarity,
    "semipolar": _semipolar,
}
# names fixed by the command-line interface
ALIASES = {"pro33": "normality-maps", "pro35": "form-equivalence"}
SUITE_NAMES = tuple(SUITES) + tuple(ALIASES) + ("all",)


def apply_overrides(results, overrides):
    """Replace tolerances of checks whose id starts with a key of `overrides`.

    The longest matching prefix wins.
    """
    if not overrides:
        return results
    keys = sorted(overrides, key=len, reverse=True)
    out = []
    for r in results:
        key = next((k for k in keys if r.id.startswith(k)), None)
        if key is None:
            out.append(r)
        else:
            out.append(CheckResult(r.id, r.family, r.deviation, float(overrides[key]), r.expect, r.note))
    return out


def run_suite(name, seed=DEFAULT_SEED, samples=None, set_samples=DEFAULT_SET_SAMPLES, tol_overrides=None):
    """Run a suite and return its report.

    `samples` replaces the per-group scalar sample counts (None keeps each
    group's own count); `set_samples` is the boundary sample count of
    set-valued constructions.
    """
    canonical = ALIASES.get(name, name)
    if canonical == "all":
        groups = list(SUITES)
    elif canonical in SUITES:
        groups = [canonical]
    else:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    report = CheckReport(name, int(seed))
    for g in groups:
        report.extend(apply_overrides(SUITES[g](seed, samples, set_samples), tol_overrides))
    return report
