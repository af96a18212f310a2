import json
import subprocess
import sys

import pytest

from jordanlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_group_info(capsys):
    code, obj = run_json(capsys, "group", "A5", "info")
    assert code == 0
    assert obj["order"] == 60 and obj["classes"] == 5 and obj["center"] == 1


def test_group_jordan_text_and_json_agree(capsys):
    code, text, _ = run(capsys, "group", "2.A5", "jordan")
    assert code == 0
    code, obj = run_json(capsys, "group", "2.A5", "jordan")
    assert code == 0
    assert obj["weak_jordan"] == 12 and obj["jordan"] == 60 and obj["certified"]
    for value in ("12", "60", "120", "10", "2"):
        assert value in text
    assert set(obj) >= {"name", "order", "max_abelian", "weak_jordan", "max_normal_abelian", "jordan",
                        "certified", "wall_time_ms"}


def test_group_from_spec_expression(capsys):
    code, obj = run_json(capsys, "group", "Wreath(Alt(5),2,Sym)", "maxab")
    assert code == 0
    assert obj["max_abelian"]["order"] == 25 and obj["weak_jordan"] == 288


def test_group_from_json_file(capsys, tmp_path):
    f = tmp_path / "s4.json"
    f.write_text(json.dumps({"degree": 4, "generators": [[1, 0, 2, 3], [1, 2, 3, 0]]}))
    code, obj = run_json(capsys, "group", str(f), "jordan")
    assert code == 0 and obj["order"] == 24 and obj["jordan"] == 6


def test_flags_after_or_before_command(capsys):
    a = run_json(capsys, "--threads", "1", "group", "A4", "maxab")
    b = run_json(capsys, "group", "A4", "maxab", "--threads", "1")
    assert a == b


def test_table1(capsys):
    code, obj = run_json(capsys, "table1")
    assert code == 0 and obj["ok"]
    rows = {r["n"]: (r["jbar_pgl"], r["jbar_gl"], r["j_gl"]) for r in obj["rows"]}
    assert rows == {2: (12, 12, 60), 3: (40, 72, 360), 4: (960, 960, 25920), 5: (960, 960, 25920)}


def test_isotypical(capsys):
    code, out, _ = run(capsys, "isotypical", "7", "4")
    assert code == 0 and out.strip().endswith("max: 10368")
    code, obj = run_json(capsys, "isotypical", "7", "4")
    assert obj["max"] == 10368 and len(obj["cases"]) == 7


def test_orderbound(capsys):
    code, obj = run_json(capsys, "orderbound", "60")
    assert code == 0 and obj["bound"] == 12
    code, obj = run_json(capsys, "orderbound", "--max-upto", "79380")
    assert (obj["max"], obj["argmax"]) == (6720, 60480)


def test_ledger(capsys):
    code, obj = run_json(capsys, "ledger")
    assert code == 0 and obj["ok"] and obj["count"] >= 30


def test_ledger_failure_exit(capsys, tmp_path):
    f = tmp_path / "ledger.json"
    f.write_text(json.dumps({"schema": 1, "entries": [
        {"id": "off-by-one", "description": "", "expr": ["mul", 2, 144], "expected": 289, "citation": "x"}]}))
    code, obj = run_json(capsys, "ledger", "--ledger", str(f))
    assert code == 1 and obj["failures"] == ["off-by-one"]


def test_pencil(capsys):
    code, obj = run_json(capsys, "pencil", "--lambdas", "0,1,2,5")
    assert code == 0 and obj["order"] == 4
    code, obj = run_json(capsys, "pencil", "--field", "Qzeta:6", "--lambdas", "1,z,z^2,z^3,z^4,z^5")
    assert code == 0 and obj["order"] == 12


def test_usage_errors(capsys):
    assert run(capsys, "group", "NoSuchGroup", "info")[0] == 2
    assert run(capsys, "pencil", "--lambdas", "0,0,1")[0] == 2
    assert run(capsys, "pencil", "--field", "R", "--lambdas", "0,1,2")[0] == 2
    assert run(capsys, "isotypical", "0", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_resource_errors(capsys):
    assert run(capsys, "group", "Sym(12)", "maxab")[0] == 3
    assert run(capsys, "group", "A6", "maxab", "--cap", "100")[0] == 3
    code, obj = run_json(capsys, "group", "Sym(21)", "info")
    assert code == 3 and obj["ok"] is False


def test_check_failure_is_named_in_json(capsys):
    code, obj = run_json(capsys, "isotypical", "7", "2")
    assert code == 1 and obj["failures"] == ["TableMiss"]


def test_verify_fast(capsys):
    code, obj = run_json(capsys, "verify", "--all")
    assert code == 0 and obj["ok"] and obj["failures"] == []
    names = [c["name"] for c in obj["checks"]]
    assert names == ["table1-weak", "table1-strong", "headline-equalities", "micro-claims", "isotypical-7-4",
                     "order-bound-sweep", "order-bound-soundness", "ledger", "pyber", "product-identity",
                     "monotonicity", "oracles", "pencil"]


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "jordanlab", "orderbound", "60"], capture_output=True, text=True)
    assert out.returncode == 0 and "12" in out.stdout
