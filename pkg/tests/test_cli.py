import io
import json
import subprocess
import sys

import pytest

from chroma.cli import EXIT_CAP, EXIT_FAIL, EXIT_INPUT, EXIT_OK, UsageError, env_caps, run
from chroma.graph import cycle_graph, write_graph


def call(args, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(args, environ=env or {}, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def c4(tmp_path):
    path = tmp_path / "c4.g"
    write_graph(cycle_graph(4), path)
    return str(path)


def test_betti_family():
    code, out, _ = call(["betti", "--family", "kn-exp", "--n", "3", "--m", "4",
                         "--max-dim", "2", "--coeff", "z2"])
    data = json.loads(out)
    assert code == EXIT_OK and data["betti"][0] == 1 and data["betti"][1] >= 1
    assert data["computed_up_to"] == 2 and data["caps"]["max_dim"] == 2


def test_betti_graph_file(c4):
    code, out, _ = call(["betti", "--graph", c4, "--max-dim", "1"])
    assert code == EXIT_OK and json.loads(out)["betti"] == [2, 0]


def test_betti_integer(c4):
    code, out, _ = call(["betti", "--graph", c4, "--max-dim", "1", "--coeff", "z"])
    assert json.loads(out)["coeff"] == "z"


def test_missing_file():
    code, out, err = call(["betti", "--graph", "/nonexistent/x.g"])
    assert code == EXIT_INPUT and out == "" and "cannot read" in err


@pytest.mark.parametrize("args", [
    ["betti"],
    ["nonsense"],
    ["betti", "--family", "kn-exp", "--n", "3"],
    ["betti", "--family", "kn-exp", "--n", "3", "--m", "4", "--simplices-cap", "0"],
    ["verify", "--theorem", "main", "--n", "1", "--m", "4"],
])
def test_usage_errors(args):
    assert call(args)[0] == EXIT_INPUT


def test_verify_main_and_disconnected():
    code, out, _ = call(["verify", "--theorem", "main", "--n", "3", "--m", "4"])
    assert code == EXIT_OK and json.loads(out)["pass"] is True
    code, out, _ = call(["verify", "--theorem", "main", "--n", "3", "--m", "3"])
    data = json.loads(out)
    assert code == EXIT_OK and data["regime"] == "disconnected"


def test_verify_thm1():
    code, out, _ = call(["verify", "--theorem", "thm1", "--n", "4"])
    data = json.loads(out)
    assert code == EXIT_OK and data["computed"]["betti_z2"] == [1, 1, 121, 1]
    assert call(["verify", "--theorem", "thm1", "--n", "3"])[0] == EXIT_INPUT


def test_verify_cap_is_exit_2():
    code, out, err = call(["verify", "--n", "3", "--m", "4", "--simplices-cap", "40"])
    assert code == EXIT_CAP and json.loads(out)["inconclusive"] is True


def test_oracle_compare():
    code, out, _ = call(["oracle-compare", "--family", "kn-exp", "--n", "3", "--m", "4",
                         "--max-dim", "3"])
    data = json.loads(out)
    assert code == EXIT_OK and data["morse"] == data["brute_force"]
    assert data["census_matches_scan"]


def test_oracle_compare_outside_regime():
    code, out, _ = call(["oracle-compare", "--family", "kn-exp", "--n", "2", "--m", "3",
                         "--max-dim", "2"])
    data = json.loads(out)
    assert code == EXIT_OK and data["brute_force"] == [1, 2, 1] and data["morse"] is None
    assert "m > n >= 3" in data["note"]


def test_oracle_compare_cap():
    code, _, _ = call(["oracle-compare", "--family", "kn-exp", "--n", "3", "--m", "4",
                       "--simplices-cap", "10"])
    assert code == EXIT_CAP


def test_morse_commands(c4):
    code, out, _ = call(["morse", "--family", "kn-exp", "--n", "3", "--m", "4",
                         "--max-dim", "3"])
    data = json.loads(out)
    assert code == EXIT_OK and data["census"] == [1, 24, 37] and data["betti_z2"] == [1, 1, 14]
    code, out, _ = call(["morse", "--graph", c4, "--seed", "3"])
    assert code == EXIT_OK and json.loads(out)["acyclic"] is True


def test_env_caps():
    assert env_caps("simplices=10, paths=5,max_dim=2") == {
        "simplices_cap": 10, "paths_cap": 5, "max_dim": 2}
    assert env_caps("") == {}
    with pytest.raises(UsageError):
        env_caps("bogus=1")
    code, out, _ = call(["betti", "--family", "kn-exp", "--n", "3", "--m", "4"],
                        env={"CHROMA_CAPS": "simplices=20"})
    assert code == EXIT_CAP
    code, out, _ = call(["betti", "--family", "kn-exp", "--n", "3", "--m", "4",
                         "--simplices-cap", "100000"], env={"CHROMA_CAPS": "simplices=20,max_dim=1"})
    assert code == EXIT_OK and json.loads(out)["computed_up_to"] == 1


def test_csv_and_out(tmp_path):
    target = tmp_path / "r.csv"
    code, out, _ = call(["betti", "--family", "kn-exp", "--n", "3", "--m", "4", "--max-dim", "2",
                         "--format", "csv", "--out", str(target)])
    assert code == EXIT_OK and out == ""
    assert target.read_text().splitlines() == [
        "key,index,value", "betti,0,1", "betti,1,1", "betti,2,14"]


def test_output_is_deterministic():
    args = ["verify", "--n", "3", "--m", "5"]
    assert call(args)[1] == call(args)[1]


def test_module_entry_point(c4):
    proc = subprocess.run([sys.executable, "-m", "chroma", "betti", "--graph", c4,
                           "--max-dim", "1", "--format", "csv"], capture_output=True, text=True)
    assert proc.returncode == 0 and "betti,0,2" in proc.stdout


def test_failed_check_is_exit_3(monkeypatch):
    import chroma.coloring as coloring

    def failing(n, m, **kw):
        r = coloring.VerificationReport(n, m, "morse", m - n - 1)
        r.add("forced", False, "constructed failure")
        return r

    monkeypatch.setattr(coloring, "verify_main", failing)
    code, out, _ = call(["verify", "--n", "3", "--m", "4"])
    assert code == EXIT_FAIL and json.loads(out)["pass"] is False
