import json

import jsonschema
import pytest
from conftest import SCHEMAS, fixture_path

from golodkit import BasedComplex, taylor
from golodkit.cli import main
from golodkit.core import load_ideal


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_betti_pentagon(capsys):
    code, out, _ = run(capsys, "betti", "--input", fixture_path("pentagon.ideal"))
    assert code == 0 and out.strip() == "(1,5,5,1)"
    code, out, _ = run(capsys, "betti", "--input", fixture_path("pentagon.ideal"), "--format", "json")
    assert json.loads(out)["tor_ranks"] == [1, 5, 5, 1]


def test_golod_fourgen_with_product_table(capsys):
    code, out, _ = run(
        capsys, "golod", "--input", fixture_path("fourgen.ideal"), "--matching", fixture_path("fourgen_worked.matching.json")
    )
    assert code == 0
    assert "conclusion              : Golod" in out
    assert "x2*u123 + x2*x3*u134" in out and "-x4*u12 + x3*u14" in out


def test_golod_json_is_schema_valid_and_reproducible(capsys):
    argv = ("golod", "--input", fixture_path("pentagon.ideal"), "--format", "json", "--seed", "5")
    code, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert code == 0 and first == second
    data = json.loads(first)
    jsonschema.validate(data, json.loads((SCHEMAS / "golod_report.json").read_text()))
    assert data["seed"] == 5 and data["conclusion"] == "not Golod"


def test_golod_katthan_is_inconclusive(capsys):
    code, out, _ = run(capsys, "golod", "--input", fixture_path("katthan.ideal"), "--strategy", "lex", "--max-arity", "3")
    assert code == 2 and "inconclusive" in out and "Golod\n" not in out.split("conclusion")[1].splitlines()[0]


def test_ainf_avramov_char2(capsys):
    code, out, _ = run(
        capsys,
        "ainf", "--input", fixture_path("avramov.ideal"), "--char2", "--max-arity", "3",
        "--matching", fixture_path("avramov_staged.matching.json"),
    )
    assert code == 0
    assert "u1 u3 u5  x4*u1234 + u1245 + x1*u2345" in out
    assert "3      no       u1 u3 u5 -> u1245" in out


def test_ainf_csv_and_json(capsys):
    code, out, _ = run(capsys, "ainf", "--input", fixture_path("fourgen.ideal"), "--format", "csv", "--max-arity", "2")
    assert code == 0 and out.splitlines()[1].startswith(",u1,u2")
    code, out, _ = run(capsys, "ainf", "--input", fixture_path("fourgen.ideal"), "--format", "json", "--max-arity", "3")
    data = json.loads(out)
    assert data["minimality"]["3"]["minimal"] and data["mu_2"][0][1] == "u1"


def test_resolve_round_trip(capsys):
    code, out, _ = run(capsys, "resolve", "--input", fixture_path("avramov.ideal"), "--format", "json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, json.loads((SCHEMAS / "complex.json").read_text()))
    K = BasedComplex.from_json(data)
    assert K.ranks() == (1, 5, 7, 4, 1)
    assert BasedComplex.from_json(json.loads(json.dumps(K.to_json()))) == K
    code, out, _ = run(capsys, "resolve", "--input", fixture_path("fourgen.ideal"), "--taylor", "--format", "json")
    assert BasedComplex.from_json(json.loads(out)) == taylor(load_ideal(fixture_path("fourgen.ideal")))
    code, out, _ = run(capsys, "resolve", "--input", fixture_path("pentagon.ideal"), "--format", "csv")
    assert out.splitlines()[-1] == "3,0,0,0,1,1"


def test_match_outputs(capsys):
    code, out, _ = run(capsys, "match", "--input", fixture_path("avramov.ideal"), "--construction", "jollenbeck")
    data = json.loads(out)
    jsonschema.validate(data, json.loads((SCHEMAS / "matching.json").read_text()))
    assert data["critical_ranks"] == [1, 5, 7, 4, 1] and data["minimal"]
    code, out, _ = run(capsys, "match", "--input", fixture_path("pentagon.ideal"), "--strategy", "revlex")
    assert json.loads(out)["final_critical_ranks"] == [1, 5, 5, 1]
    code, out, _ = run(capsys, "match", "--input", fixture_path("fourgen.ideal"), "--format", "dot")
    assert out.startswith("digraph")


def test_export_dot(capsys):
    code, out, _ = run(
        capsys, "export-dot", "--input", fixture_path("fourgen.ideal"), "--matching", fixture_path("fourgen_worked.matching.json")
    )
    assert code == 0 and out.count("color=red") == 3
    code, out, _ = run(capsys, "export-dot", "--input", fixture_path("pentagon.ideal"), "--empty")
    assert "red" not in out and out.count("rank=same") == 6


def test_check_and_lattice(capsys):
    code, out, _ = run(capsys, "check", "--input", fixture_path("katthan.ideal"), "--gcd")
    assert out.strip() == "gcd: yes"
    code, out, _ = run(capsys, "check", "--input", fixture_path("avramov.ideal"), "--format", "json")
    assert json.loads(out)["gcd"]["holds"] is False
    code, out, _ = run(capsys, "lcm-lattice", "--input", fixture_path("fourgen.ideal"))
    covers = json.loads(out)["covers"]
    assert covers["x1*x2"] == ["1"] and len(covers) == 9


def test_tor_table(capsys):
    code, out, _ = run(capsys, "tor-table", "--input", fixture_path("pentagon.ideal"), "--format", "json")
    assert json.loads(out)["nonzero"]
    code, out, _ = run(capsys, "tor-table", "--input", fixture_path("fourgen.ideal"), "--format", "json")
    assert json.loads(out)["nonzero"] == []


def test_inline_input_and_output_file(capsys, tmp_path):
    target = tmp_path / "b.txt"
    code = main(["betti", "--ideal", "ring x y; ideal x, y;", "--output", str(target)])
    assert code == 0 and target.read_text().strip() == "(1,2,1)"


def test_errors(capsys, monkeypatch, tmp_path):
    code, _, err = run(capsys, "betti", "--ideal", "ring x y; ideal x*, y;")
    assert code == 1 and json.loads(err)["error"] == "parse" and json.loads(err)["column"] == 19
    code, _, err = run(capsys, "betti", "--input", str(tmp_path / "missing.ideal"))
    assert code == 1 and json.loads(err)["error"] == "input"
    monkeypatch.setenv("GOLODKIT_MAX_GENERATORS", "4")
    code, _, err = run(capsys, "betti", "--input", fixture_path("pentagon.ideal"))
    assert code == 3 and json.loads(err)["error"] == "resource-cap"
    monkeypatch.delenv("GOLODKIT_MAX_GENERATORS")
    bad = tmp_path / "m.json"
    bad.write_text(json.dumps({"arrows": [{"source": [1, 2], "target": [1]}]}))
    code, _, err = run(capsys, "ainf", "--input", fixture_path("fourgen.ideal"), "--matching", str(bad))
    assert code == 1 and "invertible" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--count", "10", "--strands", "3", "--seed", "4")
    assert code == 0 and out.startswith("ok: 10 random ideals")
    code, out, _ = run(capsys, "verify", "--input", fixture_path("fourgen.ideal"), "--count", "0", "--strands", "0")
    assert code == 0


def test_unknown_command_exits_nonzero():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
