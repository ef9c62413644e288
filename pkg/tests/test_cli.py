import io
import json

import pytest

from plurikit import cli
from plurikit import plurilinear as pl
from plurikit.jsonio import REPORT_SCHEMA, dumps, pair_to_json, validate_report


def run(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), stdout=buf)
    doc = json.loads(buf.getvalue())
    validate_report(doc)
    assert doc["exit_code"] == code
    return code, doc, buf.getvalue()


@pytest.fixture
def hc_file(tmp_path):
    p = tmp_path / "pair.json"
    p.write_text(dumps(pair_to_json(pl.hypercomplex_pair(2))))
    return str(p)


def test_validate_hypercomplex(hc_file):
    code, doc, _ = run("validate", "--input", hc_file, "--samples", "4096")
    assert code == 0 and doc["result"]["status"] == "certified"


def test_invalid_pair_still_exits_zero(tmp_path):
    p = tmp_path / "bad_pair.json"
    p.write_text(json.dumps({"n": 1, "X": [[1]], "Y": [[0]]}))
    code, doc, _ = run("validate", "--input", str(p))
    assert code == 0 and doc["result"]["status"] == "invalid"


def test_cohomology_twist(hc_file):
    code, doc, _ = run("cohomology", "--input", hc_file, "--twist", "-1", "-1")
    assert code == 0 and (doc["result"]["h0"], doc["result"]["h1"]) == (0, 0)


@pytest.mark.parametrize("verb", ["curve", "regularity", "extend", "normalize", "profile"])
def test_pair_verbs(hc_file, verb):
    code, doc, _ = run(verb, "--input", hc_file, "--max-m", "2")
    assert code == 0 and doc["outcome"] == "computed"


def test_axisym():
    code, doc, _ = run("monopole-axisym", "--charge", "2", "--mass", "1/2", "--roots", '[{"mod": 1, "arg_pi": "-1/3"}, {"mod": 1, "arg_pi": "1/3"}]')
    assert code == 0 and doc["result"]["conclusion"] == "vanishing holds"
    code, doc, _ = run("monopole-axisym", "--charge", "2", "--mass", "1/2", "--roots", "1,-1")
    assert code == 1


def test_massless(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"k": 1, "p": [0, 1], "q": [1]}))
    code, doc, _ = run("monopole-massless", "--input", str(p))
    assert code == 0 and doc["result"]["trivial_section"]["matches_p1_over_p2"]


def test_selftest_smoke():
    code, doc, _ = run("selftest", "--level", "smoke", "--seed", "0")
    assert code == 0 and doc["result"]["passed"]


@pytest.mark.parametrize(
    "argv",
    [["frobnicate"], ["validate", "--bogus"], ["cohomology", "--twist", "a", "b"], ["validate", "--input", "/nonexistent.json"]],
)
def test_bad_arguments_exit_1(argv):
    code, doc, _ = run(*argv)
    assert code == 1 and doc["outcome"] == "invalid-input" and doc["error"]


def test_malformed_json(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{bad")
    code, doc, _ = run("validate", "--input", str(p))
    assert code == 1 and "line 1" in doc["error"]


def test_wrong_shape(tmp_path):
    p = tmp_path / "shape.json"
    p.write_text(json.dumps({"n": 2, "X": [[1]], "Y": [[0]]}))
    assert run("validate", "--input", str(p))[0] == 1


def test_byte_identical_reruns(hc_file):
    a = run("profile", "--input", hc_file, "--seed", "5")[2]
    b = run("profile", "--input", hc_file, "--seed", "5")[2]
    assert a == b
    a = run("monopole-massless", "--charge", "2", "--seed", "3")[2]
    assert a == run("monopole-massless", "--charge", "2", "--seed", "3")[2]


def test_timing_is_opt_in(hc_file):
    assert "timing_s" not in run("validate", "--input", hc_file)[1]
    assert run("validate", "--input", hc_file, "--timing")[1]["timing_s"] >= 0


def test_output_file(hc_file, tmp_path):
    out = tmp_path / "report.json"
    _, _, text = run("validate", "--input", hc_file, "--output", str(out))
    assert out.read_text() == text


def test_schema_rejects_extra_keys():
    import jsonschema

    doc = {"schema": "plurikit-v1", "command": {"verb": "x", "options": {}}, "outcome": "computed", "exit_code": 0, "result": None, "extra": 1}
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(doc, REPORT_SCHEMA)


def test_curve_file(tmp_path):
    from plurikit.exactnum import BiPoly

    p = tmp_path / "curve.json"
    P = BiPoly.zeta() - BiPoly.eta()
    p.write_text(dumps({"P": P}))
    code, doc, _ = run("curve", "--input", str(p), "--twist", "2", "-1")
    assert code == 0
    assert doc["result"]["sigma_invariant"] and doc["result"]["h_curve_00"] == [1, 0]
    assert doc["result"]["h_curve"]["h"] == [2, 0]


def test_resolution_file(tmp_path):
    from plurikit.jsonio import resolution_to_json

    pair = pl.random_pair(2, seed=2)
    p = tmp_path / "res.json"
    p.write_text(dumps(resolution_to_json(pl.resolution_matrix(pair), 2)))
    code, doc, _ = run("cohomology", "--input", str(p), "--twist", "0", "0")
    assert code == 0 and (doc["result"]["h0"], doc["result"]["h1"]) == (4, 0)
