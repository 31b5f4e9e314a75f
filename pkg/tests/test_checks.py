import json

import numpy as np
import pytest

from semipolar.checks import fitted_order
from semipolar.report import (AT_LEAST, EXPECTED_FAIL, FAIL, INFO, PASS, UNEXPECTED_PASS, CheckReport,
                              CheckResult, fmt)
from semipolar.suites import ALIASES, SUITES, apply_overrides, run_suite


@pytest.mark.parametrize("dev, tol, expect, verdict, ok", [
    (0.5, 1.0, PASS, PASS, True),
    (1.0, 1.0, PASS, PASS, True),
    (2.0, 1.0, PASS, FAIL, False),
    (2.0, 1.0, FAIL, EXPECTED_FAIL, True),
    (0.5, 1.0, FAIL, UNEXPECTED_PASS, False),
    (2.0, 1.0, AT_LEAST, PASS, True),
    (0.5, 1.0, AT_LEAST, FAIL, False),
    (9.0, 1.0, INFO, INFO, True),
    (float("nan"), 1.0, PASS, FAIL, False),
])
def test_verdicts(dev, tol, expect, verdict, ok):
    r = CheckResult("x", "f", dev, tol, expect)
    assert r.verdict == verdict and r.ok == ok


def test_fmt():
    assert fmt(-0.0) == 0.0 and fmt(float("inf")) == "inf" and fmt(float("nan")) == "nan"
    assert fmt(np.float64(0.1)) == 0.1 and fmt(True) is True


def test_report_json_is_sorted_and_parseable():
    rep = CheckReport("demo", 1)
    rep.add(CheckResult("b", "f", 0.1, 1.0))
    rep.add(CheckResult("a", "f", 2.0, 1.0, FAIL, note="control"))
    d = json.loads(rep.to_json())
    assert [c["id"] for c in d["checks"]] == ["a", "b"]
    assert d["checks"][0] == {"id": "a", "family": "f", "deviation": 2.0, "tolerance": 1.0,
                              "verdict": EXPECTED_FAIL, "expect": FAIL, "note": "control"}
    assert d["passed"] is True
    with pytest.raises(KeyError):
        rep.get("c")


def test_overrides_longest_prefix():
    rs = [CheckResult("sip.l4.a", "f", 0.5, 1.0), CheckResult("sip.l3.a", "f", 0.5, 1.0),
          CheckResult("jmap.x", "f", 0.5, 1.0)]
    out = apply_overrides(rs, {"sip.": 0.1, "sip.l4": 0.9})
    assert [r.tolerance for r in out] == [0.9, 0.1, 1.0]
    assert apply_overrides(rs, None) is rs


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nothing")


def test_aliases_point_at_suites():
    assert all(v in SUITES for v in ALIASES.values())


def test_fitted_order():
    ns = [64, 128, 256, 512]
    assert fitted_order(ns, [3.0 / n for n in ns]) == pytest.approx(1.0)
    assert fitted_order(ns, [5.0 / n ** 2 for n in ns]) == pytest.approx(2.0)


def test_full_report_passes(full_report):
    bad = [(r.id, r.deviation, r.tolerance) for r in full_report.failures]
    assert full_report.passed, bad


def test_ids_unique(full_report):
    ids = [r.id for r in full_report.results]
    assert len(ids) == len(set(ids))


def test_every_family_represented(full_report):
    fams = {r.family for r in full_report.results}
    assert {"semi-inner", "antinorm", "normality-map", "form-equivalence", "euclidean-polarity",
            "semi-polarity", "jmap-polarity"} <= fams


def test_negative_controls_are_expected_failures(full_report):
    controls = [r for r in full_report.results if r.expect == FAIL]
    assert len(controls) >= 20
    assert all(r.verdict == EXPECTED_FAIL for r in controls)


def test_support_identity_gated_on_image_convexity(full_report):
    names = {r.id.split(".")[1] for r in full_report.results if r.id.startswith("jpolar.")}
    judged = 0
    for name in names:
        try:
            conv = full_report.get(f"jpolar.{name}.image-convexity")
        except KeyError:
            continue
        sup = full_report.get(f"jpolar.{name}.support-of-semipolar")
        assert (sup.expect == PASS) == (conv.deviation <= 1e-3)
        judged += sup.expect == PASS
        # the image-side identity is always judged
        assert full_report.get(f"jpolar.{name}.support-of-image").expect == PASS
    assert judged >= 1


@pytest.mark.parametrize("suite", ["form-equivalence", "semipolar"])
def test_suite_alone_matches_all(suite, full_report):
    alone = run_suite(suite, seed=7)
    for r in alone.results:
        assert full_report.get(r.id).deviation == r.deviation


def test_alias_runs_same_checks():
    a = run_suite("pro35", seed=3).to_dict()
    b = run_suite("form-equivalence", seed=3).to_dict()
    assert a["checks"] == b["checks"] and a["suite"] == "pro35"


def test_seed_changes_numbers():
    a = run_suite("form-equivalence", seed=1)
    b = run_suite("form-equivalence", seed=2)
    assert [r.deviation for r in a.results] != [r.deviation for r in b.results]


def test_samples_override_is_used():
    rep = run_suite("normality-maps", seed=7, samples=20)
    assert rep.passed
