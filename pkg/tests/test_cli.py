import json
import subprocess
import sys

import jsonschema
import pytest

from ctsep import __version__
from ctsep.cli.main import (
    EXIT_BOUNDED,
    EXIT_DECIDED,
    EXIT_ERROR,
    main,
    run_batch,
    run_query,
    verify_certificate,
)
from ctsep.cli.records import load_schema

SCHEMA = load_schema()

QUERIES = [
    ({"command": "sep-rational", "expr": "1/(t*x)", "kind": "shift"}, EXIT_DECIDED),
    ({"command": "sep-rational", "expr": "1/(t+x)"}, EXIT_DECIDED),
    ({"command": "sep-hyperexp", "expr": "5/(t+x)+2"}, EXIT_DECIDED),
    ({"command": "sep-hypergeom", "expr": "t+x+1"}, EXIT_DECIDED),
    ({"command": "sep-algebraic", "expr": "Y^2-t"}, EXIT_DECIDED),
    ({"command": "sep-algebraic", "expr": "Y^2-(t+x)"}, EXIT_BOUNDED),
    ({"command": "telescoper", "variant": "st-dx", "expr": "1/(x^2+t)"}, EXIT_DECIDED),
    ({"command": "telescoper", "variant": "dt-sx", "expr": "1/(t*(x^2+1))"}, EXIT_DECIDED),
    ({"command": "reduce", "variant": "hermite", "expr": "x/(x^2+t)^2", "var": "x"}, EXIT_DECIDED),
    ({"command": "reduce", "variant": "abramov", "expr": "1/(x*(x+1))", "var": "x"}, EXIT_DECIDED),
    ({"command": "dispersion", "expr": "t*(t+1)*(t-5)"}, EXIT_DECIDED),
    ({"command": "gp-form", "expr": "(t+x+1)/(t+x)"}, EXIT_DECIDED),
    ({"command": "verify", "expr": "1/t", "operator": "t*D + 1"}, EXIT_DECIDED),
    ({"command": "oracle", "expr": "1/t"}, EXIT_DECIDED),
    ({"command": "oracle", "expr": "1/(t+x)", "max_order": 2, "max_degree": 3}, EXIT_BOUNDED),
    ({"command": "oracle", "expr": "2", "term": "hyperexp", "coord": "t+x"}, EXIT_DECIDED),
    ({"command": "sep-rational", "expr": "t+"}, EXIT_ERROR),
    ({"command": "sep-hyperexp", "expr": "0"}, EXIT_ERROR),
    ({"command": "nonsense", "expr": "t"}, EXIT_ERROR),
    ({"command": "telescoper", "variant": "xx", "expr": "t"}, EXIT_ERROR),
    ({"command": "sep-rational", "expr": "t", "vars": "t"}, EXIT_ERROR),
]


@pytest.mark.parametrize("query, code", QUERIES, ids=[f"{q['command']}-{i}" for i, (q, _) in enumerate(QUERIES)])
def test_records_validate(query, code):
    rec, got = run_query(query)
    assert got == code
    jsonschema.validate(rec, SCHEMA)
    assert rec["version"] == __version__
    assert ("error" in rec) == (code == EXIT_ERROR)
    cert = rec["certificate"]
    if cert is not None and query["command"] in ("sep-rational", "telescoper", "oracle") and "term" not in query:
        expr = rec["witnesses"].get("remainder", query["expr"])
        assert verify_certificate(expr, cert, query.get("kind"))


def test_specific_records():
    rec, _ = run_query({"command": "sep-rational", "expr": "1/(t*x)", "kind": "shift"})
    assert rec["separable"] is True and rec["certificate"] == "(t+1)*S - t"
    rec, _ = run_query({"command": "telescoper", "variant": "st-dx", "expr": "1/(x^2+t)"})
    assert rec["exists"] is False
    rec, _ = run_query({"command": "sep-algebraic", "expr": "Y^2-2*(x*t+1)*Y+(x*t+1)^2-t"})
    assert rec["separable"] is True
    rec, _ = run_query({"command": "sep-rational", "expr": "t+"})
    assert rec["error"]["col"] == 3 and rec["error"]["type"] == "ParseError"
    rec, _ = run_query({"command": "dispersion", "expr": "t*(t+1)*(t-5)*(t^2+1)*(t^2+4*t+5)",
                        "at": "t^2+1"})
    assert rec["witnesses"]["local_dispersion"] == 2


def test_timing_is_optional():
    rec, _ = run_query({"command": "dispersion", "expr": "t", "timing": True})
    assert rec["timing"] >= 0
    jsonschema.validate(rec, SCHEMA)
    assert "timing" not in run_query({"command": "dispersion", "expr": "t"})[0]


def test_verify_certificate():
    assert verify_certificate("1/t", "t*D + 1", "derivation")
    assert not verify_certificate("1/(t+x)", "D", "derivation")
    assert verify_certificate("t+x", "(S-1)^2", "shift")
    with pytest.raises(ValueError):
        verify_certificate("1/t", "x*D")


def test_batch_order_and_jobs():
    lines = [json.dumps(q) for q, _ in QUERIES[:8]] + ["not json", "[1]", ""]
    serial = run_batch(lines, 1)
    parallel = run_batch(lines, 3)
    assert serial == parallel
    assert len(serial) == 10
    assert [c for _, c in serial[:8]] == [c for _, c in QUERIES[:8]]
    assert serial[8][1] == serial[9][1] == EXIT_ERROR
    for rec, _ in serial:
        jsonschema.validate(rec, SCHEMA)


def test_main_human_and_json(capsys):
    assert main(["sep-rational", "1/(t*x)", "--kind", "shift"]) == EXIT_DECIDED
    out = capsys.readouterr().out
    assert "separable: yes" in out and "certificate: (t+1)*S - t" in out
    assert main(["telescoper", "st-dx", "1/(x^2+t)", "--json"]) == EXIT_DECIDED
    rec = json.loads(capsys.readouterr().out)
    assert rec["exists"] is False
    assert main(["sep-hyperexp", "0"]) == EXIT_ERROR
    assert "annihilates" in capsys.readouterr().out
    assert main(["oracle", "1/(t+x)", "--max-order", "1", "--max-degree", "1"]) == EXIT_BOUNDED
    capsys.readouterr()


def test_main_batch(tmp_path, capsys):
    f = tmp_path / "q.jsonl"
    f.write_text("\n".join(json.dumps(q) for q, _ in QUERIES[:3]) + "\n")
    assert main(["batch", str(f), "--jobs", "2"]) == EXIT_DECIDED
    out = capsys.readouterr().out.splitlines()
    assert [json.loads(s)["input"]["expr"] for s in out] == [q["expr"] for q, _ in QUERIES[:3]]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ctsep", "dispersion", "t*(t+3)", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["witnesses"]["dispersion"] == 3
