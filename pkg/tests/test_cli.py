import io
import json
import re

import pytest

from psalgebroid.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


@pytest.mark.parametrize("name,dims", [("circle", [1, 1]), ("sphere", [1, 0, 1]), ("torus", [1, 2, 1])])
def test_betti(name, dims):
    code, out = call("betti", "--complex", name)
    rep = json.loads(out)
    assert code == 0 and rep["simplicial"] == dims and rep["model"] == dims


def test_ce():
    code, out = call("ce", "--liealg", "sl2")
    assert code == 0 and json.loads(out)["dims"] == [1, 0, 0, 1]
    code, out = call("ce", "--liealg", "abelian2")
    assert json.loads(out)["dims"] == [1, 2, 1]


def test_ce_invalid_reports_jacobi(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"dim": 3, "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}},
                                                    {"i": 1, "j": 2, "coeffs": {"1": "1"}}]}))
    code, out = call("ce", "--liealg", str(p))
    rep = json.loads(out)
    assert code == 1 and rep["violation"]["kind"] == "Jacobi"


def test_algebroid_cohomology():
    code, out = call("algebroid-cohomology", "--complex", "circle", "--liealg", "abelian1")
    rep = json.loads(out)
    assert code == 0 and rep["computed"] == rep["predicted"] == [1, 2, 1]
    code, out = call("algebroid-cohomology", "--complex", "sphere", "--liealg", "sl2")
    assert json.loads(out)["predicted"] == [1, 0, 1, 1, 0, 1]
    code, out = call("algebroid-cohomology", "--complex", "point", "--liealg", "sl2")
    assert json.loads(out)["computed"] == [1, 0, 0, 1]


def test_verify_suites():
    code, out = call("verify", "kunneth", "--complex", "circle", "--liealg", "sl2", "--cases", "30")
    assert code == 0 and json.loads(out)["ok"]
    code, out = call("verify", "subdivision", "--complex", "circle", "--cases", "20")
    assert code == 0
    code, out = call("verify", "bracket-sign", "--cases", "20")
    rep = json.loads(out)
    assert code == 0 and rep["named"] == "standard"


def test_minus_sign_fails_cartan_suite():
    code, out = call("verify", "cartan", "--complex", "solid_simplex", "--liealg", "sl2",
                     "--bracket-sign", "paper", "--cases", "30")
    rep = json.loads(out)
    assert code == 1 and "counterexample" in rep["properties"][0]


def test_input_errors(tmp_path):
    code, out = call("betti", "--complex", "nowhere")
    assert code == 2
    p = tmp_path / "broken.json"
    p.write_text('{"maximal_simplices": [[0, 1],\n  ]')
    code, out = call("betti", "--complex", str(p))
    assert code == 2 and "line 2" in json.loads(out)["error"]
    p.write_text('{"maximal_simplices": [[0, 0]]}')
    assert call("betti", "--complex", str(p))[0] == 2
    assert call("betti", "--complex", "circle", "--model", "pr", "--poly-degree", "0")[0] == 2


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"complex": "circle", "model": "pr", "poly_degree": 2}))
    code, out = call("betti", "--config", str(cfg))
    assert code == 0 and json.loads(out)["model_name"] == "P2"
    code, out = call("betti", "--config", str(cfg), "--model", "whitney")
    assert json.loads(out)["model_name"] == "whitney"


def test_deterministic_and_exact(tmp_path):
    args = ("verify", "cartan", "--complex", "circle", "--liealg", "sl2", "--cases", "15", "--seed", "9",
            "--bracket-sign", "paper")
    a, b = call(*args), call(*args)
    assert a == b
    assert not re.search(r"\d\.\d", a[1])
    o = tmp_path / "r.json"
    call(*args, "--out", str(o))
    assert o.read_text() == a[1]


def test_text_output():
    code, out = call("algebroid-cohomology", "--complex", "circle", "--liealg", "abelian1", "--text")
    assert "verdict: ok" in out


def test_verify_mv_split_file(tmp_path):
    p = tmp_path / "split.json"
    p.write_text(json.dumps({"U_generators": [[0]], "V_generators": [[1], [2]]}))
    code, out = call("verify", "mv", "--complex", "circle", "--split", str(p))
    assert code == 0 and json.loads(out)["ok"]
    p.write_text(json.dumps({"U_generators": [[0]], "V_generators": [[1]]}))
    code, out = call("verify", "mv", "--complex", "sphere", "--split", str(p))
    assert code == 2 and "star cover" in json.loads(out)["error"]
    p.write_text(json.dumps({"U": [[0]]}))
    code, _ = call("verify", "mv", "--complex", "circle", "--split", str(p))
    assert code == 2
