import json
import subprocess
import sys

import pytest

from mixid.cli import EXIT_ENGINE, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_REFUTED, EXIT_USAGE, run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def call_json(capsys, *argv):
    code, out, err = call(capsys, *argv, "--json")
    return code, json.loads(out) if out.strip() else None, err


@pytest.fixture
def consts(tmp_path):
    def write(data, name="c.json"):
        p = tmp_path / name
        p.write_text(json.dumps(data))
        return str(p)

    return write


def test_analyze(capsys):
    code, rep, _ = call_json(capsys, "analyze", "x*c1*x*c2*x^-1*c3*x^-1")
    assert code == EXIT_OK
    assert rep["Jplus"] == [1, 3] and rep["Jminus"] == [2]
    assert rep["critical"] == [{"index": 2, "constant": "c2"}]
    assert not rep["strong"] and rep["singular"]


def test_analyze_singular(capsys):
    code, rep, _ = call_json(capsys, "analyze", "[g1^x,g3]")
    assert code == EXIT_OK and rep["singular"] and rep["content"] == "1"


def test_analyze_with_detectors(capsys, consts):
    path = consts({"t": {"kind": "perm", "cycles": [[1, 2]]}})
    code, rep, _ = call_json(capsys, "analyze", "x^-1*t*x", "--constants", path)
    det = rep["critical_detectors"][0]
    assert det["small"] is True and det["support_size"] == 2


def test_parse_error_exit(capsys):
    code, out, err = call(capsys, "analyze", "x*[y")
    assert code == EXIT_USAGE and "position 4" in err and "^" in err


def test_usage_errors(capsys):
    assert call(capsys, "frobnicate")[0] == EXIT_USAGE
    assert call(capsys, "witness", "x*c*x", "--structure", "tree")[0] == EXIT_USAGE
    assert call(capsys, "witness", "x*c*x", "--structure", "dlo")[0] == EXIT_USAGE  # c unbound


def test_unknown_config_field(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 1, "colour": "red"}))
    code, _, err = call(capsys, "list-structures", "--config", str(cfg))
    assert code == EXIT_USAGE and "colour" in err


def test_config_then_flags(capsys, tmp_path, consts):
    path = consts({"c": {"kind": "translation", "by": 1}})
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"structure": "dlo", "n": 3, "constants": path}))
    code, rep, _ = call_json(capsys, "witness", "x*c*x", "--config", str(cfg), "--n", "2")
    assert code == EXIT_OK and rep["n"] == 2 and rep["structure"] == "dlo"


def test_witness_and_check(capsys, consts, tmp_path):
    path = consts({"c": {"kind": "translation", "by": 1}})
    out = tmp_path / "rep.json"
    args = ["witness", "x*c*x", "--structure", "dlo", "--constants", path, "--n", "2"]
    code, rep, _ = call_json(capsys, *args, "--out", str(out))
    assert code == EXIT_OK and rep["verified"] and len(rep["pairs"]) == 2
    code, rep, _ = call_json(capsys, *args, "--check", str(out))
    assert code == EXIT_OK and rep["verified"]
    data = json.loads(out.read_text())
    data["certificate"]["chains"][0][1] = "1234"
    out.write_text(json.dumps(data))
    code, rep, _ = call_json(capsys, *args, "--check", str(out))
    assert code == EXIT_ENGINE and not rep["verified"]


def test_witness_rado(capsys):
    code, rep, _ = call_json(capsys, "witness", "x*y*x", "--structure", "rado", "--n", "3")
    assert code == EXIT_OK and rep["verified"]


def test_witness_negative_control(capsys, consts):
    path = consts({"c": {"kind": "pl-points", "points": [[0, 0], [1, 1], [2, 3]]}})
    code, rep, _ = call_json(
        capsys, "witness", "x^-1*c*x", "--structure", "dlo", "--constants", path, "--branch", "convex-no-small"
    )
    assert code == EXIT_ENGINE and rep["constant"] == "c" and rep["step"] == 1


def test_verify_identity(capsys):
    code, rep, _ = call_json(capsys, "verify-identity", "dlo", "--trials", "10", "--points", "10")
    assert code == EXIT_OK and rep["violations"] == [] and rep["note"]


def test_verify_identity_custom_word(capsys, consts):
    path = consts({"c": {"kind": "bump", "a": 0, "b": 1}})
    code, rep, _ = call_json(
        capsys, "verify-identity", "x*c*x", "--structure", "dlo", "--constants", path, "--trials", "5", "--points", "5"
    )
    assert code == EXIT_REFUTED and rep["violations"]
    assert call(capsys, "verify-identity", "x*c*x", "--structure", "rado")[0] == EXIT_USAGE


def test_germ(capsys):
    code, rep, _ = call_json(capsys, "germ", "[x^2,y^3]")
    assert code == EXIT_OK and rep["P"] == "3*X^-2 - 3*X^0"
    code, rep, _ = call_json(capsys, "germ", "[[x,y],[x,y^2]]")
    assert code == EXIT_INCONCLUSIVE and rep["in_second_derived"]
    code, rep, _ = call_json(capsys, "germ", "x")
    assert code == EXIT_OK and rep["e"] == 1 and rep["P"] == "0"
    assert call(capsys, "germ", "x*c")[0] == EXIT_USAGE


def test_onevar(capsys, consts):
    path = consts({"c": {"kind": "plhomeo", "nodes": [["1/8", "1/4"], ["3/8", "3/8"]]}})
    code, rep, _ = call_json(capsys, "onevar", "x*c*x", "--constants", path)
    assert code == EXIT_OK and rep["lambda"] == 3 and rep["threshold_respected"]
    assert call(capsys, "onevar", "x*c*x^-1", "--constants", path)[0] == EXIT_USAGE


def test_commutator(capsys, consts):
    ident = {"kind": "plhomeo", "nodes": []}
    path = consts({f"h{i}": ident for i in range(1, 5)})
    code, rep, _ = call_json(capsys, "commutator", "h1*x*h2*y*h3*x^-1*h4*y^-1", "--constants", path)
    assert code == EXIT_OK and rep["lambda"] == 65 and rep["chain"] == ["1/2", "3/2", "5/2", "5", "6"]


def test_list_structures(capsys):
    code, rep, _ = call_json(capsys, "list-structures")
    assert code == EXIT_OK and len(rep["structures"]) == 8


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "x*c*y*c^-1"],
        ["witness", "x*y^-1*x", "--structure", "poset", "--n", "2", "--seed", "7"],
        ["witness", "x*y*x", "--structure", "perm2", "--seed", "3"],
        ["verify-identity", "cyclic-pm", "--trials", "5", "--points", "5", "--seed", "2"],
        ["germ", "[x,y]*[x^2,y]"],
        ["list-structures"],
    ],
)
def test_determinism(capsys, argv):
    a = call(capsys, *argv, "--json")
    b = call(capsys, *argv, "--json")
    assert a == b


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "mixid", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "mixid" in res.stdout
