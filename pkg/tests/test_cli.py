import json
import subprocess
import sys

import pytest

from drinfeld_modpoly import cli
from drinfeld_modpoly.cli import EXIT_FAULT, EXIT_INPUT, EXIT_OK, JobSpec, main, run
from drinfeld_modpoly.pipeline import PipelineFault

SCHEMA = {"q", "r", "J", "e_r", "type", "psi", "weights", "coefficients", "degree_table"}


def test_compute_json(capsys):
    assert main(["compute", "--q", "2", "--r", "3", "--J", "1,2", "--type", "outgoing"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert set(data) == SCHEMA
    assert data["psi"] == 7 and data["weights"]["w_1"] == 4 and data["weights"]["w_2"] == 6
    assert [row[1] for row in data["degree_table"]] == [4 * (7 - i) for i in range(8)]


def test_grading_failure_exits_2(capsys):
    assert main(["compute", "--q", "2", "--r", "3", "--J", "1,1"]) == EXIT_INPUT
    assert "residue" in capsys.readouterr().err


def test_other_input_errors(capsys):
    assert main(["compute", "--q", "6", "--r", "2", "--J", "7"]) == EXIT_INPUT
    assert main(["compute", "--q", "2", "--r", "3"]) == EXIT_INPUT
    with pytest.raises(SystemExit) as exc:
        main(["compute", "--q", "2", "--r", "3", "--J", "a,b"])
    assert exc.value.code == 2


def test_fault_exits_3(capsys, monkeypatch):
    def boom(*a, **k):
        raise PipelineFault("charpoly", "injected", index=2)

    monkeypatch.setattr(cli, "compute_modpoly", boom)
    assert main(["compute", "--q", "2", "--r", "2", "--J", "3", "--threads", "1"]) == EXIT_FAULT
    fault = json.loads(capsys.readouterr().err)["fault"]
    assert fault["stage"] == "charpoly" and fault["index"] == 2


def test_table_csv_and_text(capsys):
    assert main(["table", "--q", "2", "--r", "3", "--J", "4,1", "--type", "incoming", "--threads", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "i,deg_T,bound" and len(lines) == 9
    assert main(["table", "--q", "2", "--r", "2", "--J", "3", "--format", "text", "--threads", "1"]) == 0
    assert "0 & 12 & 12" in capsys.readouterr().out


def test_verify_both(capsys):
    assert main(["verify", "--q", "2", "--r", "3", "--type", "both", "--threads", "1"]) == 0
    reports = json.loads(capsys.readouterr().out)
    assert len(reports) == 8 and all(r["all_sharp"] for r in reports)


def test_trace(capsys):
    assert main(["trace", "--q", "2", "--r", "3", "--J", "1,2", "--type", "incoming"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["pass"] and data["deg_T"] == data["bound"] == 6


def test_oracle(capsys):
    assert main(["oracle", "--q", "2", "--r", "2", "--J", "3", "--samples", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["pass"] and data["psi"] == 3 and data["mismatches"] == []
    assert main(["oracle", "--q", "2", "--r", "2", "--J", "3", "--module", "2,2,1"]) == 0
    capsys.readouterr()
    assert main(["oracle", "--q", "2", "--r", "2", "--J", "3", "--module", "2,2"]) == EXIT_INPUT


def test_out_file(tmp_path):
    out = tmp_path / "phi.csv"
    assert main(["compute", "--q", "2", "--r", "2", "--J", "3", "--format", "csv", "--out", str(out)]) == 0
    assert out.read_text().startswith("J,type,i,deg_T,bound,coefficient")


def test_jobspec_roundtrip():
    specs = [
        JobSpec("compute", 2, 3, ((1, 2),), "incoming", "text", "/tmp/x y.json", 4, "matrix"),
        JobSpec("table", 3, 3, ((1, 3), (5, 2)), "both", "csv"),
        JobSpec("oracle", 2, 2, ((3,),), samples=5, seed=9, max_degree=8, module=(2, 2, 1)),
    ]
    for s in specs:
        assert JobSpec.from_text(s.to_text()) == s


def test_output_independent_of_threads():
    base = JobSpec("compute", 2, 3, ((1, 2), (4, 1)), "outgoing", threads=1)
    one = run(base)
    two = run(JobSpec("compute", 2, 3, ((1, 2), (4, 1)), "outgoing", threads=2))
    assert one == two


def test_thread_env(monkeypatch):
    monkeypatch.setenv(cli.THREADS_ENV, "3")
    assert cli.default_threads() == 3
    monkeypatch.setenv(cli.THREADS_ENV, "many")
    with pytest.raises(SystemExit):
        cli.default_threads()


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "drinfeld_modpoly.cli", "compute", "--q", "2", "--r", "3",
                          "--J", "1,1"], capture_output=True, text=True)
    assert res.returncode == EXIT_INPUT
