import json
import subprocess
import sys

import pytest

from chibound.cli import main
from chibound.graph import complete_multipartite, cycle_graph, write_graph


@pytest.fixture
def k333(tmp_path):
    path = tmp_path / "k333.txt"
    write_graph(complete_multipartite([3, 3, 3]), path)
    return path


def test_colour_ok(k333, tmp_path):
    out = tmp_path / "trace.json"
    assert main(["colour", "--graph", str(k333), "--profile", "DESK1", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["colours"] >= 3 and len(data["proper_colouring"]) == 9


def test_colour_hfree_violation(tmp_path):
    path = tmp_path / "c6.txt"
    write_graph(cycle_graph(6), path)
    out = tmp_path / "t.json"
    assert main(["colour", "--graph", str(path), "--out", str(out)]) == 2
    assert "witness" in json.loads(out.read_text())
    assert main(["colour", "--graph", str(path), "--attest-hfree", "--out", str(out)]) == 0


def test_audit(capsys):
    assert main(["audit", "--s", "1", "--c", "3", "--omega", "200"]) == 0
    assert "all inequalities hold: True" in capsys.readouterr().out
    assert main(["audit", "--s", "1", "--c", "2", "--omega", "14", "--strict"]) == 1
    capsys.readouterr()
    main(["audit", "--s", "1", "--c", "2", "--omega", "200", "--json"])
    assert json.loads(capsys.readouterr().out)["d"] == 25


def test_oracle(k333, capsys):
    for query, value in [("omega", 3), ("chi", 3), ("hfree", True), ("biclique", True)]:
        assert main(["oracle", query, "--graph", str(k333)]) == 0
        assert json.loads(capsys.readouterr().out)["value"] == value


def test_bench(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 2, "instances": [{"kind": "cotree", "params": {"n": 12}, "count": 2}]}))
    assert main(["bench", "--config", str(cfg), "--out-dir", str(tmp_path / "out")]) == 0
    assert len((tmp_path / "out" / "report.csv").read_text().splitlines()) == 3


def test_missing_file_and_module_entry(tmp_path):
    assert main(["oracle", "omega", "--graph", str(tmp_path / "none.txt")]) == 1
    done = subprocess.run([sys.executable, "-m", "chibound", "audit", "--s", "1", "--c", "3", "--omega", "200"], capture_output=True, text=True)
    assert done.returncode == 0 and "holds" in done.stdout
