"""Acceptance criteria, one test and one printed line each.

All tests read the full report at the acceptance seed (computed once per
session) and judge every check of the criterion at the criterion's own
threshold; the checks' own verdicts must agree.
"""

import json
import time

import pytest

from semipolar.cli import main
from semipolar.report import AT_LEAST, EXPECTED_FAIL, FAIL, INFO, PASS

from conftest import ACCEPTANCE_SEED


def select(report, *prefixes, skip=()):
    rs = [r for r in report.results if r.id.startswith(prefixes) and not any(r.id.startswith(s) for s in skip)]
    assert rs, prefixes
    return rs


def worst(rs):
    r = max(rs, key=lambda r: r.deviation)
    return f"worst {r.id} = {r.deviation:.3g}"


def line(record, label, ok, detail):
    record(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")


def judged(rs, limit):
    """Ordinary checks: verdict pass, tolerance no looser than `limit`, deviation under it."""
    bad = [r.id for r in rs if r.expect == PASS and (r.verdict != PASS or r.tolerance > limit
                                                     or not r.deviation <= limit)]
    return bad


def test_semi_inner_axioms(full_report, record):
    rs = select(full_report, "sip.", skip=("sip.asymmetry",))
    rs = [r for r in rs if not r.id.endswith(".dual-norm")]
    fams = {r.id.split(".")[1] for r in rs}
    bad = judged(rs, 1e-9)
    line(record, "semi-inner axioms and properties, 1000 samples, rel 1e-9", not bad,
         f"{len(fams)} families, {len(rs)} checks, {worst(rs)}")
    assert len(fams) >= 14 and not bad


def test_dual_norm_of_support_functional(full_report, record):
    rs = [r for r in full_report.results if r.id.startswith("sip.") and r.id.endswith(".dual-norm")]
    bad = judged(rs, 1e-8)
    line(record, "dual norm of f_x equals ||x||, 500 samples, rel 1e-8", not bad, worst(rs))
    assert rs and not bad


def test_double_antinorm(full_report, record):
    closed = select(full_report, "anti.double.")
    numeric = select(full_report, "anti.double-numeric.")
    perp = select(full_report, "anti.perp-biconditional.")
    bad = judged(closed, 1e-9) + judged(numeric, 1e-3) + [r.id for r in perp if r.deviation != 0]
    line(record, "antinorm of the antinorm is the norm (1e-9 planar, 1e-3 in d=4) and perp biconditional",
         not bad, f"{worst(closed)}; {worst(numeric)}; {sum(r.deviation for r in perp):g} perp mismatches")
    assert not bad


def test_self_antinormal_products(full_report, record):
    rs = select(full_report, "anti.self.")
    pos = [r for r in rs if r.expect == PASS]
    neg = [r for r in rs if r.expect == FAIL]
    bad = judged(pos, 1e-3) + [r.id for r in neg if not (r.deviation > 1e-2 and r.verdict == EXPECTED_FAIL)]
    line(record, "polar-pair products are self-antinormal (1e-3), non-polar controls deviate > 1e-2",
         not bad, f"{worst(pos)}; controls {', '.join(f'{r.deviation:.3g}' for r in neg)}")
    assert len(neg) >= 1 and not bad


def test_normality_map_identities(full_report, record):
    rs = select(full_report, "jmap.")
    numeric = ("jmap.product-", "jmap.ellipsoid-d4-numeric", "jmap.pcombo-")
    planar = [r for r in rs if not r.id.startswith(numeric)]
    four = [r for r in rs if r.id.startswith(numeric)]
    bad = judged(planar, 1e-6) + judged(four, 1e-3)
    line(record, "normality-map identities, 1e-6 closed form and 1e-3 numeric d=4", not bad,
         f"{len(rs)} checks, {worst(planar)}; {worst(four)}")
    assert not bad


def test_form_equivalence(full_report, record):
    pos = select(full_report, "equiv.isometry-")
    neg = select(full_report, "equiv.scaling-", "equiv.shear-")
    agree = full_report.get("equiv.criteria-agree")
    n_pos = len({r.id.rsplit(".", 1)[0] for r in pos})
    n_neg = len({r.id.rsplit(".", 1)[0] for r in neg})
    bad = judged(pos, 1e-6) + [r.id for r in neg if r.verdict != EXPECTED_FAIL]
    ok = not bad and agree.deviation == 0 and n_pos == 10 and n_neg == 10
    line(record, "form equivalence: 10 equivalent, 10 inequivalent, criteria agree", ok,
         f"{worst(pos)}; smallest negative gap {min(r.deviation for r in neg):.3g}; "
         f"{agree.deviation:g} disagreements")
    assert ok


def test_semipolar_set_rules(full_report, record):
    rs = select(full_report, "semipolar.", "refine.")
    rules = [r for r in rs if r.expect == PASS]
    exact = [r for r in rules if r.tolerance <= 1e-6]
    sampled = [r for r in rules if r.tolerance > 1e-6 and not r.id.endswith("right-set-stable")]
    orders = [r for r in rs if r.expect == AT_LEAST]
    bad = judged(exact, 1e-6) + judged(sampled, 2e-2)
    bad += [r.id for r in orders if r.verdict != PASS]
    line(record, "semi-polar rules, 1e-6 exact and 2e-2 at 512 samples, fitted refinement order >= 0.95", not bad,
         f"{worst(exact)}; {worst(sampled)}; fitted orders "
         f"{', '.join(f'{r.deviation:.3f}' for r in orders)} ({orders[0].note})")
    assert orders and not bad


def test_inner_product_characterization(full_report, record):
    wit = select(full_report, "charact.l4.")
    euc = select(full_report, "charact.euclidean.")
    bad = [r.id for r in wit if not (r.deviation > 1e-3 and r.verdict == PASS)] + judged(euc, 1e-9)
    line(record, "l4 witnesses against convexity and both bipolar rules, none for Euclidean", not bad,
         f"margins {', '.join(f'{r.deviation:.3g}' for r in wit)}; {worst(euc)}")
    assert len(wit) == 3 and not bad


def test_jmap_polarity(full_report, record):
    hull = [r for r in select(full_report, "jpolar.") if r.id.endswith("hull-identity")
            and not r.id.startswith("jpolar.euclidean-square")]
    square = select(full_report, "jpolar.euclidean-square.")
    direction = [r for r in select(full_report, "jpolar.") if r.expect == PASS and r not in hull
                 and r not in square]
    skipped = [r for r in select(full_report, "jpolar.") if r.expect == INFO and "not judged" in r.note]
    bad = judged(hull, 2e-2) + judged(direction, 1e-3) + judged(square, 1e-9)
    line(record, "hull of J M vs (J_a M°)° (2e-2), direction-wise identities (1e-3, 360 directions), "
                 "Euclidean square (1e-9)", not bad,
         f"{worst(hull)}; {worst(direction)}; {worst(square)}; "
         f"{len(skipped)} identities not judged because J M is nonconvex")
    assert not bad


@pytest.mark.xfail(strict=True, reason="h_B(M°, x) = g(M, x) needs J M convex; for this ellipse it is not")
def test_support_identity_on_l4_ellipse(full_report, record):
    r = full_report.get("jpolar.l4-ellipse.support-of-semipolar")
    conv = full_report.get("jpolar.l4-ellipse.image-convexity")
    ok = r.deviation < 1e-3
    line(record, "l4 ellipse, h_B(M°, x) = g(M, x) within 1e-3", ok,
         f"deviation {r.deviation:.3g}; J M convexity deficiency {conv.deviation:.3g} (expected failure)")
    assert ok


def test_asymmetric_normality(full_report, record):
    normal = full_report.get("sip.asymmetry.l4-d3.normal")
    wit = full_report.get("sip.asymmetry.l4-d3.witness")
    euc = full_report.get("sip.asymmetry.euclidean")
    ok = normal.verdict == PASS and wit.deviation > 0.01 and wit.verdict == PASS and euc.verdict == PASS
    line(record, "l4 d=3 normality is not symmetric (defect > 0.01), Euclidean is", ok,
         f"witness {wit.note}, defect {wit.deviation:.3g}; Euclidean worst {euc.deviation:.3g} in 10^4 pairs")
    assert ok


def test_combination_inequalities(full_report, record):
    rs = select(full_report, "anti.combo-", "anti.sup-combo.")
    asserted = [r for r in rs if r.expect == PASS]
    info = [r for r in rs if r.expect == INFO]
    bad = judged(asserted, 1e-9)
    line(record, "combination bounds hold with slack >= -1e-9; inf-of-antinorms gap reported", not bad,
         f"{worst(asserted)}; reported gap {', '.join(f'{r.deviation:.3g}' for r in info)}")
    assert info and not bad


def test_determinism_and_runtime(full_report, record, capsys):
    t0 = time.perf_counter()
    code = main(["check", "--suite", "all", "--seed", str(ACCEPTANCE_SEED)])
    elapsed = time.perf_counter() - t0
    out, _ = capsys.readouterr()
    same = out == full_report.to_json()
    ok = same and code == 0 and elapsed < 60
    line(record, "check --suite all --seed 7 is byte-identical across runs and under 60 s", ok,
         f"{len(json.loads(out)['checks'])} checks, {elapsed:.1f} s, identical={same}")
    assert ok
