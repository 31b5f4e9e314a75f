import json

import numpy as np
import pytest

from semipolar.cli import evaluate, main
from semipolar.config import (body_from_config, form_from_config, load_json, norm_from_config,
                              parse_overrides, parse_vector)
from semipolar.errors import ConfigError, DimensionMismatch
from semipolar.export import boundary_curve, format_csv
from semipolar.norms import LpNorm, ProductNorm, SupComboNorm
from semipolar.polarity import NormBall, PolygonBody
from semipolar.report import num17
from semipolar.symplectic import SymplecticForm

LP4 = '{"type": "lp", "p": 4, "dim": 2}'
EUC = '{"type": "lp", "p": 2, "dim": 2}'
SQUARE = '{"type": "polygon", "vertices": [[1, 1], [-1, 1], [-1, -1], [1, -1]]}'


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


# --- configuration ---------------------------------------------------------------

def test_load_json_sources(tmp_path):
    p = tmp_path / "n.json"
    p.write_text(LP4)
    assert load_json(str(p)) == load_json(LP4) == {"type": "lp", "p": 4, "dim": 2}
    assert load_json({"a": 1}) == {"a": 1}


@pytest.mark.parametrize("bad", ["{not json", "/no/such/file.json", "[1, 2]"])
def test_load_json_errors(bad):
    with pytest.raises(ConfigError):
        load_json(bad)


def test_norm_configs():
    assert isinstance(norm_from_config(LP4), LpNorm)
    prod = norm_from_config({"type": "product", "K": json.loads(LP4),
                             "L": {"type": "lp", "p": 4 / 3, "dim": 2}})
    assert isinstance(prod, ProductNorm) and prod.dim == 4
    sup = norm_from_config({"type": "supcombo", "terms": [json.loads(LP4), json.loads(EUC)]})
    assert isinstance(sup, SupComboNorm)
    pc = norm_from_config({"type": "pcombo", "p": 2, "terms": [json.loads(EUC), json.loads(EUC)]})
    assert pc.value(np.array([1.0, 0.0])) == pytest.approx(np.sqrt(2))
    anti = norm_from_config({"type": "antinorm", "base": json.loads(LP4), "form": {"type": "standard", "n": 1}})
    assert anti.value(np.array([1.0, 1.0])) == pytest.approx(2 ** 0.75)
    inf = norm_from_config({"type": "lp", "p": "inf", "dim": 2})
    assert inf.value(np.array([3.0, -4.0])) == 4.0


@pytest.mark.parametrize("cfg", [
    {"p": 4, "dim": 2},
    {"type": "lq", "p": 4, "dim": 2},
    {"type": "lp", "p": "four", "dim": 2},
    {"type": "lp", "p": 4, "dim": 0},
    {"type": "lp", "p": 0.5, "dim": 2},
    {"type": "ellipsoid", "Q": [[1, 2], [2, 1]]},
    {"type": "ellipsoid", "Q": [[1, 0], [0, "x"]]},
    {"type": "pcombo", "p": 2, "terms": "none"},
])
def test_norm_config_errors(cfg):
    with pytest.raises(ConfigError):
        norm_from_config(cfg)


def test_product_dimension_clash():
    with pytest.raises(DimensionMismatch):
        norm_from_config({"type": "product", "K": json.loads(LP4), "L": {"type": "lp", "p": 2, "dim": 3}})


def test_form_configs():
    assert np.array_equal(form_from_config({"type": "standard", "n": 1}).omega, [[0, 1], [-1, 0]])
    W = form_from_config({"type": "matrix", "omega": [[0, 2], [-2, 0]]})
    assert isinstance(W, SymplecticForm)
    with pytest.raises(ConfigError):
        form_from_config({"type": "matrix", "omega": [[0, 1], [1, 0]]})
    with pytest.raises(ConfigError):
        form_from_config({"type": "standard", "n": 0})


def test_body_configs():
    assert isinstance(body_from_config(SQUARE), PolygonBody)
    assert isinstance(body_from_config({"type": "ball", "norm": json.loads(LP4), "radius": 2}), NormBall)
    assert body_from_config({"type": "ellipsoid", "Q": [[2, 0], [0, 1]]}).dim == 2
    with pytest.raises(ConfigError):
        body_from_config({"type": "polygon", "vertices": [[1, 1], [2, 1], [2, 2]]})
    with pytest.raises(DimensionMismatch):
        body_from_config({"type": "polygon", "vertices": [[1, 1, 1], [2, 1, 1], [2, 2, 1]]})


def test_parse_vector():
    assert np.array_equal(parse_vector("1,2.5,-3"), [1.0, 2.5, -3.0])
    with pytest.raises(DimensionMismatch):
        parse_vector("1,2,3", 2)
    with pytest.raises(ConfigError):
        parse_vector("1,a")


def test_parse_overrides():
    assert parse_overrides(["sip.=1e-4", "jmap.l4=2e-6"]) == {"sip.": 1e-4, "jmap.l4": 2e-6}
    assert parse_overrides(['{"equiv": 0.5}']) == {"equiv": 0.5}
    with pytest.raises(ConfigError):
        parse_overrides(["nope"])


# --- eval ------------------------------------------------------------------------

@pytest.mark.parametrize("norm, op, vectors, expected", [
    (LP4, "norm", ["1,1"], "1.1892071150027210"),
    (EUC, "jmap", ["1,0"], "0,1.0000000000000000"),
    (EUC, "sip", ["1,0", "0,1"], "0"),
    (LP4, "antinorm", ["1,1"], num17(2 ** 0.75)),
    (LP4, "dual", ["1,1"], num17(2 ** 0.75)),
    (EUC, "jamap", ["1,0"], "0,1.0000000000000000"),
])
def test_eval_examples(norm, op, vectors, expected, capsys):
    assert evaluate(norm, op, vectors) == expected
    code, out, _ = run(["eval", norm, op, *vectors], capsys)
    assert code == 0 and out == expected + "\n"


def test_num17_digits():
    assert num17(2 ** 0.25) == "1.1892071150027210"
    assert len(num17(np.pi).replace(".", "")) == 17
    assert num17(-0.0) == "0"


def test_eval_with_form(capsys):
    code, out, _ = run(["eval", LP4, "antinorm", "1,0", "--form", '{"type": "matrix", "omega": [[0, 2], [-2, 0]]}'],
                       capsys)
    assert code == 0 and float(out) == pytest.approx(2.0)


@pytest.mark.parametrize("argv, code", [
    (["eval", LP4, "norm", "1,2,3"], 3),
    (["eval", '{"type": "lp", "p": 4, "dim": 3}', "jmap", "1,2,3"], 3),
    (["eval", '{"type": "bogus"}', "norm", "1,1"], 2),
    (["eval", "{broken", "norm", "1,1"], 2),
    (["eval", LP4, "sip", "1,1"], 2),
    (["eval", LP4, "norm", "1,x"], 2),
])
def test_eval_exit_codes(argv, code, capsys):
    assert run(argv, capsys)[0] == code


def test_unknown_subcommand_option_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval", LP4, "volume", "1,1"])
    assert exc.value.code == 2


# --- check -----------------------------------------------------------------------

def test_check_axioms_suite(capsys):
    code, out, err = run(["check", "--suite", "axioms", "--seed", "7", "--samples", "200"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["suite"] == "axioms" and rep["seed"] == 7
    assert err == ""
    ids = [c["id"] for c in rep["checks"]]
    assert ids == sorted(ids)
    assert set(rep["checks"][0]) >= {"id", "family", "deviation", "tolerance", "verdict"}


def test_check_scaled_form_control_is_expected_fail(capsys):
    code, out, _ = run(["check", "--suite", "pro35", "--seed", "7"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    verdicts = {c["id"]: c["verdict"] for c in rep["checks"]}
    scaled = [v for k, v in verdicts.items() if k.startswith("equiv.scaling-")]
    assert scaled and all(v == "expected-fail" for v in scaled)
    assert verdicts["equiv.criteria-agree"] == "pass"


def test_check_tolerance_override_fails(capsys):
    code, out, err = run(["check", "--suite", "form-equivalence", "--seed", "7", "--tol-override", "equiv.isometry-=-1"],
                         capsys)
    rep = json.loads(out)
    assert code == 1 and not rep["passed"]
    assert "failed: equiv.isometry-0" in err
    assert all(c["tolerance"] == -1.0 for c in rep["checks"] if c["id"].startswith("equiv.isometry-"))


def test_check_out_file(tmp_path, capsys):
    p = tmp_path / "r.json"
    code, out, _ = run(["check", "--suite", "form-equivalence", "--seed", "3", "--out", str(p)], capsys)
    assert code == 0 and out == ""
    assert json.loads(p.read_text())["seed"] == 3


def test_seed_environment_override(monkeypatch, capsys):
    monkeypatch.setenv("MINK_SEED", "11")
    code, out, _ = run(["check", "--suite", "form-equivalence", "--seed", "7"], capsys)
    assert code == 0 and json.loads(out)["seed"] == 11
    monkeypatch.setenv("MINK_SEED", "eleven")
    assert run(["check", "--suite", "form-equivalence"], capsys)[0] == 2


def test_bad_override_exit_code(capsys):
    assert run(["check", "--suite", "form-equivalence", "--tol-override", "nothing"], capsys)[0] == 2


# --- export ----------------------------------------------------------------------

def parse_csv(text):
    return np.array([[float(v) for v in line.split(",")] for line in text.strip().splitlines()])


def test_export_ball(capsys):
    code, out, _ = run(["export", "ball", "--norm", LP4, "--samples", "360"], capsys)
    pts = parse_csv(out)
    assert code == 0 and pts.shape == (361, 2)
    assert np.array_equal(pts[0], pts[-1])
    assert np.max(np.abs(LpNorm(4, 2).value(pts) - 1.0)) < 1e-12


def test_export_antiball_is_conjugate_sphere(tmp_path, capsys):
    p = tmp_path / "a.csv"
    assert run(["export", "antiball", "--norm", LP4, "--samples", "360", "--out", str(p)], capsys)[0] == 0
    pts = parse_csv(p.read_text())
    assert pts.shape == (361, 2)
    assert np.max(np.abs(LpNorm(4 / 3, 2).value(pts) - 1.0)) < 1e-12


def test_export_jimage_lies_on_antinorm_sphere():
    W = SymplecticForm.standard(1)
    pts = boundary_curve("jimage", LpNorm(4, 2), W, samples=200)
    anti = norm_from_config({"type": "antinorm", "base": json.loads(LP4), "form": {"type": "standard", "n": 1}})
    assert pts.shape == (201, 2)
    assert np.max(np.abs(anti.value(pts) - 1.0)) < 1e-12


def test_export_semipolars(capsys):
    code, out, _ = run(["export", "semipolar-right", "--norm", EUC, "--body", SQUARE, "--samples", "64"], capsys)
    pts = parse_csv(out)
    assert code == 0 and pts.shape == (65, 2)
    # the polar of the square is the cross |x| + |y| <= 1
    assert np.allclose(np.abs(pts).sum(axis=1), 1.0, atol=1e-12)
    left = boundary_curve("semipolar-left", LpNorm(4, 2), body=body_from_config(SQUARE), samples=100, clip=50.0)
    assert left.shape == (101, 2) and np.max(np.linalg.norm(left, axis=1)) <= 50.0 + 1e-9


@pytest.mark.parametrize("argv, code", [
    (["export", "semipolar-left", "--norm", LP4], 2),
    (["export", "ball", "--norm", '{"type": "lp", "p": 4, "dim": 4}'], 3),
    (["export", "ball", "--norm", LP4, "--out", "/no/such/dir/x.csv"], 2),
])
def test_export_errors(argv, code, capsys):
    assert run(argv, capsys)[0] == code


def test_format_csv_has_no_header():
    assert format_csv([[1.0, 0.0]]) == "1.0000000000000000,0\n"
