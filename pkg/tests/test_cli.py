import json
import subprocess
import sys

import pytest

from clusterhall.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_cc_all_a3(capsys, data_dir):
    code, out, _ = run(capsys, "cc", data_dir / "a3.quiver", "all")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 6
    assert any(l.startswith("0,1,0\tX = (1 + u1*u3)/u2") for l in lines)


def test_cc_d4_json(capsys, data_dir):
    code, out, _ = run(capsys, "cc", data_dir / "d4.quiver", "1,2,1,1", "--json")
    assert code == 0
    (row,) = json.loads(out)
    assert row["denominator"] == [1, 2, 1, 1]
    assert row["value_at_one"] == 14


def test_cc_a1(capsys, data_dir):
    code, out, _ = run(capsys, "cc", data_dir / "a1.quiver", "1")
    assert code == 0 and "X = 2/u1" in out


def test_cc_bad_root_and_bad_file(capsys, data_dir):
    assert run(capsys, "cc", data_dir / "a3.quiver", "1,0,1")[0] == 2
    code, _, err = run(capsys, "cc", data_dir / "broken.quiver", "all")
    assert code == 2 and "line 3" in err
    assert run(capsys, "cc", data_dir / "missing.quiver", "all")[0] == 2


def test_verify(capsys, data_dir):
    code, out, _ = run(capsys, "verify", data_dir / "a3.quiver", "all")
    assert code == 0
    reports = json.loads(out)
    assert all(r["verdict"] for r in reports)
    main_report = next(r for r in reports if r["check"] == "main")
    assert main_report["details"][0]["cc_variables"] == 9
    code, out, _ = run(capsys, "verify", data_dir / "d4.quiver", "almost-split")
    report = json.loads(out)
    assert code == 0 and report["verdict"] and len(report["details"]) == 8


def test_verify_false_verdict_exits_1(capsys, data_dir, monkeypatch):
    from clusterhall import bridge
    from clusterhall.algebra import LaurentPolynomial as LP
    from clusterhall.mutation import ExplorationResult

    monkeypatch.setattr(bridge, "explore", lambda q, budget=None: ExplorationResult(frozenset(LP.variables(3)), frozenset(), 0))
    code, out, _ = run(capsys, "verify", data_dir / "a3.quiver", "main")
    assert code == 1 and json.loads(out)["verdict"] is False


def test_mutate_and_explore(capsys, data_dir):
    code, out, _ = run(capsys, "mutate", data_dir / "a2.quiver", "1")
    assert code == 0 and "x1' = (1 + u2)/u1" in out
    code, out, _ = run(capsys, "mutate", data_dir / "a2.quiver", "1,1")
    assert code == 0 and "back at the initial cluster" in out
    assert run(capsys, "mutate", data_dir / "a2.quiver", "3")[0] == 2
    code, out, _ = run(capsys, "explore", data_dir / "a3.quiver")
    assert code == 0 and out.strip() == "9 variables, 14 clusters"


def test_frieze_commands(capsys, data_dir):
    code, out, _ = run(capsys, "frieze", data_dir / "hexagon.tri")
    assert code == 0
    assert "            1     3     2     1     3     2     1" in out
    assert "matches: true" in out
    code, out, _ = run(capsys, "frieze", data_dir / "a3.quiver", "--from-ar", "--json")
    assert code == 0 and json.loads(out)["valid"]
    code, _, err = run(capsys, "frieze", data_dir / "crossing.tri")
    assert code == 2 and "(1, 4) and (2, 5) cross" in err


def test_mfree_commands(capsys, data_dir):
    code, out, _ = run(capsys, "mfree", data_dir / "a3_cycle.quiver", "--relations",
                       data_dir / "a3_cycle.relations", "--module", "support: 1,2")
    assert code == 0 and out.strip() == "(u1 + u2 + u3)/(u1*u2)"
    code, out, _ = run(capsys, "mfree", data_dir / "d4_square.quiver", "--relations",
                       data_dir / "d4_square.relations", "--module", "support: 1,2,3,4; zero_arrows: (4,1)", "--json")
    assert code == 0
    assert json.loads(out)["value"] == "(u1^2 + 2*u1*u4 + u4^2 + u1*u2*u3 + u2*u3*u4)/(u1*u2*u3*u4)"
    code, out, _ = run(capsys, "mfree", data_dir / "a3.quiver", "--module", "support: 1,2")
    assert code == 0 and "matches X_M from Grassmannians: true" in out
    assert run(capsys, "mfree", data_dir / "a3.quiver", "--module", "nonsense")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "cc")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_environment_overrides(capsys, data_dir, monkeypatch):
    monkeypatch.setenv("SEED_BUDGET", "3")
    code, _, err = run(capsys, "explore", data_dir / "a3.quiver")
    assert code == 2 and "3 seeds" in err
    code, out, _ = run(capsys, "explore", data_dir / "a3.quiver", "--seed-budget", "100")
    assert code == 0
    monkeypatch.setenv("SEED_BUDGET", "lots")
    assert run(capsys, "explore", data_dir / "a3.quiver")[0] == 2


def test_primes_flag(capsys, data_dir):
    code, out, _ = run(capsys, "cc", data_dir / "d4.quiver", "1,2,1,1", "--primes", "7,11,13,17,19,23")
    assert code == 0 and "X(1) = 14" in out
    assert run(capsys, "cc", data_dir / "d4.quiver", "1,2,1,1", "--primes", "4,6")[0] == 2


def test_jobs_flag_is_deterministic(capsys, data_dir):
    _, serial, _ = run(capsys, "cc", data_dir / "d4.quiver", "all")
    _, parallel, _ = run(capsys, "cc", data_dir / "d4.quiver", "all", "--jobs", "2")
    assert serial == parallel


def test_module_entry_point(data_dir):
    proc = subprocess.run([sys.executable, "-m", "clusterhall", "explore", str(data_dir / "a2.quiver")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "5 variables, 5 clusters"
