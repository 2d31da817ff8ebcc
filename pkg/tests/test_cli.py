import json
import re

import pytest

from pentaconf.cli import EXIT_EXCEPTIONAL, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, run
from pentaconf.polygon import polygon_from_json, singularity_type
from pentaconf.projective import collinear


def gen(tmp_path, capsys, *args, name="poly.json"):
    path = tmp_path / name
    assert run(["gen", *args, "-o", str(path)]) == EXIT_OK
    capsys.readouterr()
    return path


def test_gen_step2_type(capsys):
    assert run(["gen", "--n", "9", "--type", "step2:i=4,m=2", "--seed", "7"]) == EXIT_OK
    A = polygon_from_json(json.loads(capsys.readouterr().out))
    assert collinear(*(A.vertex(i) for i in (1, 3, 5, 7)))
    assert singularity_type(A) == {3, 5}


def test_gen_deterministic(capsys):
    run(["gen", "--n", "9", "--seed", "7"])
    first = capsys.readouterr().out
    run(["gen", "--n", "9", "--seed", "7"])
    assert capsys.readouterr().out == first
    run(["gen", "--n", "9", "--seed", "8"])
    assert capsys.readouterr().out != first


def test_gen_seed_from_environment(capsys, monkeypatch):
    run(["gen", "--n", "7", "--seed", "5"])
    explicit = capsys.readouterr().out
    monkeypatch.setenv("PENTAGRAM_SEED", "5")
    run(["gen", "--n", "7"])
    assert capsys.readouterr().out == explicit
    monkeypatch.setenv("PENTAGRAM_SEED", "five")
    assert run(["gen", "--n", "7"]) == EXIT_INPUT


def test_gen_input_errors(capsys):
    assert run(["gen", "--n", "4"]) == EXIT_INPUT
    assert "at least 5" in capsys.readouterr().err
    assert run(["gen", "--n", "9", "--type", "step1:i=5,m=9", "--closed"]) == EXIT_INPUT
    assert "unsatisfiable" in capsys.readouterr().err
    with pytest.raises(SystemExit) as e:
        run(["gen", "--n", "9", "--type", "cone:i=1"])
    assert e.value.code == 2


def test_iterate_regular_svg(tmp_path, capsys):
    poly = gen(tmp_path, capsys, "--n", "9", "--regular")
    svg = tmp_path / "it.svg"
    assert run(["iterate", str(poly), "--k", "3", "--svg", str(svg)]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["steps"] == 3 and len(out["trace"]) == 4
    text = svg.read_text()
    assert 'version="1.1"' in text and text.count("<path") == 4
    assert "chart:" in text


def test_iterate_reports_singularity(tmp_path, capsys):
    poly = gen(tmp_path, capsys, "--n", "9", "--type", "single:i=3", "--seed", "1")
    assert run(["iterate", str(poly), "--k", "2"]) == EXIT_OK
    captured = capsys.readouterr()
    out = json.loads(captured.out)
    assert out["steps"] == 1
    assert out["singular"]["step"] == 2
    assert out["vanishing_denominators"] == {"1": ["F[6,1]"], "2": ["F[6,1]"]}
    assert "singular at step 2" in captured.err


def test_iterate_text_format(tmp_path, capsys):
    poly = gen(tmp_path, capsys, "--n", "9", "--type", "single:i=3", "--seed", "1")
    run(["iterate", str(poly), "--k", "2", "--format", "text"])
    assert "T^1: vanishing F[6,1]" in capsys.readouterr().out


def test_trace_reingestion(tmp_path, capsys):
    poly = gen(tmp_path, capsys, "--n", "8", "--seed", "3")
    trace = tmp_path / "trace.json"
    run(["iterate", str(poly), "--k", "1", "-o", str(trace)])
    run(["iterate", str(trace), "--k", "1"])
    two_hops = json.loads(capsys.readouterr().out)["trace"][-1]
    run(["iterate", str(poly), "--k", "2"])
    direct = json.loads(capsys.readouterr().out)["trace"][-1]
    assert two_hops == direct


def test_iterate_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["iterate", str(bad)]) == EXIT_INPUT
    bad.write_text(json.dumps({"n": 5}))
    assert run(["iterate", str(bad)]) == EXIT_INPUT
    assert run(["iterate", str(tmp_path / "missing.json")]) == EXIT_INPUT


def test_desing_verify(tmp_path, capsys):
    poly = gen(tmp_path, capsys, "--n", "9", "--type", "single:i=3", "--seed", "2")
    code = run(["desing", str(poly), "--verify", "--verify-seeds", "3"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert "main == oracle: true" in captured.err
    assert "seeds agree (3 seeds): true" in captured.err
    out = json.loads(captured.out)
    assert out["m"] == 3 and out["main_equals_oracle"] is True
    assert len(out["iterates"]) == 4
    assert all(d["provenance"] in ("curve", "computed", "degenerate-branch", "random")
               for it in out["iterates"] for d in it["vertex_decorations"])


def test_desing_experimental_type(tmp_path, capsys):
    poly = gen(tmp_path, capsys, "--n", "12", "--type", "set:{3,4,7,8}", "--seed", "0")
    assert run(["desing", str(poly), "--format", "text"]) == EXIT_OK
    assert "m = 5" in capsys.readouterr().out


def test_desing_exceptional(tmp_path, capsys):
    poly = gen(tmp_path, capsys, "--n", "6", "--type", "set:{1,3,5}", "--closed", "--seed", "0")
    assert run(["desing", str(poly)]) == EXIT_EXCEPTIONAL
    assert "exceptional classification" in capsys.readouterr().err


def test_desing_known_failure_exit_code(tmp_path, capsys):
    poly = gen(tmp_path, capsys, "--n", "7", "--type", "complement:i=7", "--seed", "0")
    assert run(["desing", str(poly), "--verify"]) == EXIT_VERIFY
    assert "main == oracle: false" in capsys.readouterr().err


def test_verify_suites(capsys):
    assert run(["verify", "fpoly-routes", "--kmax", "3"]) == EXIT_OK
    assert re.search(r"fpoly-routes: PASS", capsys.readouterr().out)
    assert run(["verify", "conjecture-experiments", "--n", "6", "--json"]) == EXIT_OK
    res = json.loads(capsys.readouterr().out)
    assert res["status"] == "REPORT" and res["rows"]
    assert run(["verify", "no-such-suite"]) == EXIT_INPUT
    assert "unknown suite" in capsys.readouterr().err
