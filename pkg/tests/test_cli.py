import io
import json
import subprocess
import sys

import pytest

from orbitforge.cache import ResultCache, cache_key
from orbitforge.cli import SCHEMA, run_command


def run(argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    out = io.StringIO()
    code = run_command(argv, out=out)
    return code, out.getvalue()


def test_closure_text_prints_18_equations():
    code, out = run(["closure", "--algebra", "gl", "--n", "3", "--lambda", "[2,1]", "--format", "text"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# closure gl n=3 lambda=[2,1]: 18 equations"
    assert len(lines) == 19 and all(line.endswith(" = 0") for line in lines[1:])
    assert "x_1_1^2" in out


def test_closure_json():
    code, out = run(["closure", "--n", "3", "--lambda", "[1,1,1]"])
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == SCHEMA
    assert doc["equation_count"] == 9 and doc["monomial_order"] == "grlex-rowmajor-v1"
    assert len(doc["provenance"]) == 9


def test_sp_closure_json():
    code, out = run(["closure", "--algebra", "sp", "--m", "2", "--lambda", "[2,2]", "--sp-mode", "paper"])
    doc = json.loads(out)
    assert code == 0 and doc["sp_mode"] == "paper" and doc["gerstenhaber"] is True
    assert doc["metadata"]["condition"] == "group"


@pytest.mark.parametrize(
    "argv",
    [
        ["closure", "--algebra", "sp", "--m", "2", "--lambda", "[3,1]"],
        ["closure", "--n", "3", "--lambda", "[2,2"],
        ["closure", "--n", "3", "--lambda", "[1,2]"],
        ["closure", "--n", "4", "--lambda", "[2,1]"],
        ["closure", "--n", "6", "--lambda", "[6]"],
        ["bound", "--n", "3", "--lambda", "[3,1]"],
    ],
)
def test_domain_errors_exit_1(argv, capsys):
    code, out = run(argv)
    assert code == 1 and out == ""
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["closure", "--n", "3", "--lambda", "[2,1]", "--bogus"],
        ["closure", "--n", "3"],
        ["closure", "--n", "3", "--m", "1", "--lambda", "[2,1]"],
        ["closure", "--algebra", "sp", "--n", "2", "--lambda", "[2]"],
        ["nonsense"],
        [],
        ["closure", "--n", "3", "--lambda", "[2,1]", "--format", "xml"],
        ["oracle", "--max-n", "-1"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(argv)
    assert code == 2


def test_charts():
    code, out = run(["charts", "--n", "3", "--lambda", "[2,1]"])
    doc = json.loads(out)
    assert code == 0 and doc["chart_count"] == doc["expected_chart_count"] == 9
    code, out = run(["charts", "--n", "3", "--lambda", "[2,1]", "--format", "cas", "--chart", "2"])
    assert "// 10 variables, 19 generators" in out
    code, _ = run(["charts", "--n", "3", "--lambda", "[2,1]", "--format", "cas", "--chart", "99"])
    assert code == 2
    code, out = run(["charts", "--n", "2", "--lambda", "[1,1]", "--format", "text"])
    assert code == 0 and "0 charts" in out


def test_weyman_compare():
    code, out = run(["weyman", "--n", "3", "--lambda", "[2,1]", "--compare", "--samples", "4", "--seed", "3"])
    doc = json.loads(out)
    assert code == 0
    assert doc["spanning_count"] == 21 and doc["comparison"]["closure_count"] == 18
    assert doc["comparison"]["oracle_agreement"] is True
    assert set(doc["generators"]) == {"V_0,1", "V_0,2", "V_0,3", "V_1,2", "V_2,2", "V_3,1"}


def test_symplectic_constraints():
    code, out = run(["symplectic", "constraints", "--m", "1", "--format", "text"])
    assert code == 0 and out.splitlines()[1] == "x_2_2 + x_1_1 = 0"
    code, out = run(["symplectic", "constraints", "--m", "2", "--sp-mode", "paper"])
    doc = json.loads(out)
    assert doc["raw_count"] == 16 and doc["family_sizes"]["rest"] == 12


def test_bound():
    code, out = run(["bound", "--n", "3", "--lambda", "[2,1]"])
    doc = json.loads(out)
    assert code == 0
    assert {k: doc[k] for k in ("paper_bound", "prime", "max_coeff_F", "max_coeff_H")} == {
        "paper_bound": 1, "prime": 2, "max_coeff_F": 1, "max_coeff_H": 1,
    }


def test_reduce_pipeline(monkeypatch):
    _, closure = run(["closure", "--n", "3", "--lambda", "[2,1]"])
    code, out = run(["reduce", "--p", "2"], stdin=closure, monkeypatch=monkeypatch)
    doc = json.loads(out)
    assert code == 0 and doc["modulus"] == 2 and doc["equation_count"] == 18
    assert all(term[0] == "1" for eq in doc["equations"] for term in eq)
    code, _ = run(["reduce", "--p", "9"], stdin=closure, monkeypatch=monkeypatch)
    assert code == 1
    code, _ = run(["reduce", "--p", "5"], stdin="not json", monkeypatch=monkeypatch)
    assert code == 1


def test_export(monkeypatch):
    code, out = run(["export", "--n", "3", "--lambda", "[2,1]", "--dialect", "macaulay2"])
    assert code == 0 and "-- 9 variables, 18 generators" in out
    code, out = run(["export", "--dialect", "singular"], stdin='{"n": 2, "equations": []}', monkeypatch=monkeypatch)
    assert code == 0 and "ideal I = 0;" in out


def test_oracle_command():
    code, out = run(["oracle", "--max-n", "3", "--samples", "3", "--seed", "5"])
    doc = json.loads(out)
    assert code == 0 and doc["agreement"] is True and len(doc["results"]) == 6


def test_verify_command():
    code, out = run(["verify", "--max-n", "3", "--samples", "3", "--seed", "7"])
    assert code == 0
    assert out.splitlines()[-1] == "all checks passed"
    assert "stratification oracle" in out and "mod-p homomorphism" in out


def test_cache_is_transparent_and_semantic(tmp_path):
    argv = ["closure", "--n", "3", "--lambda", "[2,1]", "--cache-dir", str(tmp_path)]
    _, cold = run(argv)
    files = list(tmp_path.rglob("*.json"))
    assert len(files) == 1
    _, warm = run(argv)
    assert warm == cold
    # flag order and spelling of the partition do not change the key
    _, reordered = run(["closure", "--lambda", "[2, 1]", "--cache-dir", str(tmp_path), "--n", "3"])
    assert reordered == cold and len(list(tmp_path.rglob("*.json"))) == 1
    _, no_cache = run(argv + ["--no-cache"])
    assert no_cache == cold


def test_cache_rejects_foreign_entries(tmp_path):
    cache = ResultCache(tmp_path)
    cfg = {"command": "closure", "n": 3}
    cache.put(cfg, {"x": 1})
    path = next(tmp_path.rglob("*.json"))
    entry = json.loads(path.read_text())
    entry["config"] = {"command": "other"}
    path.write_text(json.dumps(entry))
    assert cache.get(cfg) is None
    assert cache_key(cfg) != cache_key({"command": "closure", "n": 4})


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "orbitforge.cli", "closure", "--n", "2", "--lambda", "[2]", "--format", "text",
         "--cache-dir", str(tmp_path)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("# closure gl n=2 lambda=[2]: 5 equations")
    proc = subprocess.run([sys.executable, "-m", "orbitforge.cli", "closure", "--n", "2", "--lambda", "[3]"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 1
