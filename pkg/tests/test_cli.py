import csv
import io
import json
import subprocess
import sys

import pytest

from bkgraph.cli import main
from bkgraph.generators import apple, complete, join, empty
from bkgraph.graph import to_graph6
from bkgraph.sweep import SweepReport

K10 = to_graph6(complete(10)).decode()
APPLE6 = to_graph6(apple()).decode()


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_recognize_c5_all_free(capsys):
    code, out, _ = run(capsys, "recognize", "--patterns", "p6,apple,torch", "Dhc")
    assert code == 0
    assert out.split("\t")[1] == "member"
    assert "P6=FREE" in out and "APPLE=FREE" in out and "TORCH=FREE" in out


def test_recognize_apple_prints_witness(capsys):
    code, out, _ = run(capsys, "recognize", "--format", "json", APPLE6)
    rep = json.loads(out)
    assert code == 0
    assert rep["verdicts"]["APPLE"] == [0, 1, 2, 3, 4, 5]
    assert rep["member"] is False


def test_malformed_input_exit_2_with_line(capsys, monkeypatch):
    code, _, err = run(capsys, "recognize", "-", stdin="C~\nDhc\nD\n", monkeypatch=monkeypatch)
    assert code == 2
    assert "line 3" in err


def test_unknown_pattern_is_input_error(capsys):
    code, _, err = run(capsys, "recognize", "--patterns", "banana", "Dhc")
    assert code == 2 and "banana" in err


def test_corpus_file_input(capsys, tmp_path):
    f = tmp_path / "corpus.g6"
    f.write_text("# two\nC~\nDhc\n")
    code, out, _ = run(capsys, "omega", str(f))
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [r["omega"] for r in rows] == [4, 2]


def test_chi_json(capsys):
    code, out, _ = run(capsys, "chi", "Dhc")
    row = json.loads(out)
    assert code == 0 and row["chi"] == 3 and row["status"] == "EXACT"


def test_verify_k4_is_out_of_hypothesis(capsys):
    code, out, _ = run(capsys, "verify", "C~", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["n", "m", "delta", "omega", "chi", "rhs", "holds", "status", "millis"]
    assert rows[1][:8] == ["4", "6", "3", "4", "4", "4", "N/A", "EXACT"]


def test_verify_k10_holds(capsys):
    code, out, _ = run(capsys, "verify", K10)
    rec = json.loads(out)
    assert code == 0
    assert rec["holds"] is True and rec["verdict"] == "HOLDS"


def test_budget_env_default(capsys, monkeypatch):
    monkeypatch.setenv("BK_BUDGET_MS", "not-a-number")
    code, _, err = run(capsys, "verify", "C~")
    assert code == 2 and "BK_BUDGET_MS" in err


def test_sweep_json_roundtrip_and_determinism(capsys, tmp_path):
    args = ["sweep", "--seed", "7", "--count", "3", "--n", "12..16", "--delta", "9..10"]
    code, out, err = run(capsys, *args, "--compact")
    assert code == 0
    rep = json.loads(out)
    assert json.loads(json.dumps(rep)) == rep
    assert SweepReport.from_dict(rep).to_dict() == rep
    assert rep["aggregate"]["violations"] == 0 and rep["violations"] == []
    assert "0 violations" in err
    _, out2, _ = run(capsys, *args, "--compact")
    strip = lambda r: [{k: v for k, v in row.items() if k != "millis"} for row in r["rows"]]  # noqa: E731
    assert strip(json.loads(out2)) == strip(rep)


def test_sweep_csv_and_no_filter_labels(capsys):
    code, out, _ = run(
        capsys, "sweep", "--seed", "1", "--count", "4", "--n", "20..22", "--delta", "9..10",
        "--no-filter", "--format", "csv",
    )
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert len(rows) == 4
    assert {r["member"] for r in rows} <= {"true", "false"}


def test_sweep_requires_seed(capsys):
    with pytest.raises(SystemExit) as info:
        main(["sweep", "--count", "1"])
    assert info.value.code == 2


def test_sweep_infeasible_config(capsys):
    code, _, err = run(capsys, "sweep", "--seed", "1", "--count", "1", "--n", "5..8", "--delta", "9")
    assert code == 3 and "infeasible" in err


def test_audit_with_computed_coloring(capsys):
    g = join(complete(8), empty(2))
    code, out, _ = run(capsys, "audit", to_graph6(g).decode(), "--u", "0", "--color")
    rep = json.loads(out)
    assert code == 0
    assert rep["md"]["case"] == "clique"
    assert rep["rule"]["status"] in ("SUCCESS", "NOT_APPLICABLE")
    assert set(rep["profiles"]) == {f"u{i}" for i in range(1, 8)} | {"x", "y"}


def test_audit_r1_trace(capsys):
    # u = 0 joined to 1..9 only: u_1 has every other color missing
    from bkgraph.graph import Graph

    g = Graph.from_edges(10, [(0, v) for v in range(1, 10)])
    cols = ",".join(str(c) for c in [0, 1, 2, 3, 4, 5, 6, 7, 8, 8])
    code, out, _ = run(capsys, "audit", to_graph6(g).decode(), "--u", "0", "--coloring", cols)
    rep = json.loads(out)
    assert code == 0
    assert rep["rule"]["rule"] == "R1"
    assert rep["rule"]["trace"] == [{"vertex": 1, "from": 1, "to": 2}, {"vertex": 0, "from": None, "to": 1}]
    assert rep["missing_color_at"] == [f"u{i}" for i in range(1, 8)]


def test_audit_rejects_bad_shape(capsys):
    g6 = to_graph6(complete(10)).decode()
    cols = ",".join(["0"] + [str(c) for c in range(1, 10)])
    code, _, err = run(capsys, "audit", g6, "--u", "0", "--coloring", cols, "--k", "8")
    assert code == 2


def test_enumerate_and_sample(capsys):
    code, out, _ = run(capsys, "enumerate", "4")
    assert code == 0 and len(out.split()) == 11
    code, out, _ = run(capsys, "sample", "--n", "12", "--delta", "9", "--seed", "3")
    assert code == 0 and out.strip()[0] == chr(12 + 63)


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bkgraph.cli", "verify", "C~", "--format", "csv"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].startswith("n,m,delta")


def test_audit_r2_fixture_trace(capsys):
    from pathlib import Path

    fixtures = json.loads((Path(__file__).parent / "fixtures" / "rule_fixtures.json").read_text())
    fx = next(f for f in fixtures if f["rule"] == "R2" and f["via"] == "apply_rules")
    cols = ",".join(map(str, fx["coloring"]))
    code, out, _ = run(capsys, "audit", fx["graph6"], "--u", str(fx["u"]), "--coloring", cols)
    rep = json.loads(out)
    assert code == 0
    assert rep["missing_color_at"] == []
    assert rep["rule"]["rule"] == "R2" and rep["rule"]["move"].startswith("kempe-swap")
    assert rep["rule"]["trace"][-1]["vertex"] == fx["u"]
    # a broken chain shows up as a null path in the matrix
    assert None in rep["ij_paths"].values()
