import json
import subprocess
import sys

import numpy as np
import pytest

from quantions import cli, tables
from quantions.cli import dumps, main


def qtn(*args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "quantions", *args], input=stdin, capture_output=True, text=True, timeout=120
    )


def write_json(tmp_path, values, name="q.json"):
    path = tmp_path / name
    path.write_text(json.dumps(values) if not isinstance(values, str) else values)
    return str(path)


class TestDumps:
    def test_floats_round_trip(self):
        x = 0.1 + 0.2
        assert json.loads(dumps([x]))[0] == x
        assert dumps(-0.0) == "0"
        assert dumps({"a": [1, True, None, "s"]}) == '{"a": [1, true, null, "s"]}'

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            dumps(float("nan"))


class TestTables:
    @pytest.mark.parametrize("basis", ["tetrad", "quaternion", "null"])
    def test_text(self, basis, capsys):
        assert main(["tables", "--basis", basis]) == 0
        assert "all 16 cells match the golden table" in capsys.readouterr().out

    def test_json(self, capsys):
        assert main(["tables", "--basis", "tetrad", "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["basis"] == "tetrad" and doc["match"] and doc["mismatches"] == []
        assert doc["labels"] == ["Omega", "e1", "e2", "e3"]
        assert doc["cells"][2][1]["expr"] == "-i e3"
        assert doc["cells"][2][1]["value"] == [0, -1, 0, 0, 0, 0, 0, 1]

    def test_mismatch_names_cell(self, monkeypatch, capsys):
        golden = tables._GOLDEN["tetrad"]
        rows = [list(r) for r in golden[1]]
        rows[2][1] = "i e3"
        monkeypatch.setitem(tables._GOLDEN, "tetrad", (golden[0], tuple(tuple(r) for r in rows)))
        assert main(["tables", "--basis", "tetrad"]) == 1
        assert "mismatch at (e2, e1): expected i e3, computed -i e3" in capsys.readouterr().out

    def test_subprocess(self):
        res = qtn("tables", "--basis", "quaternion")
        assert res.returncode == 0
        assert "quaternion: all 16 cells match" in res.stdout


class TestVerify:
    def test_pass(self, capsys):
        assert main(["verify", "--algebra", "hermitian:2", "--samples", "200"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 4 and all(line.endswith("PASS") for line in lines)

    def test_wrong_a_fails(self, capsys):
        assert main(["verify", "--algebra", "realsym:2", "--a", "1", "--samples", "200"]) == 1
        out = capsys.readouterr().out
        assert "petersen" in out and "FAIL" in out

    def test_poisson_json(self, capsys):
        assert main(["verify", "--algebra", "poisson:3", "--samples", "50", "--format", "json"]) == 0
        docs = json.loads(capsys.readouterr().out)
        assert [d["identity"] for d in docs] == ["jacobi", "leibniz", "petersen"]
        assert all(d["max_residual"] == 0 for d in docs)

    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert main(["verify", "--algebra", "hermitian:2", "--samples", "20", "--format", "json", "--out", str(out)]) == 0
        assert capsys.readouterr().out == ""
        assert len(json.loads(out.read_text())) == 4

    def test_workers_do_not_change_output(self, capsys):
        outs = []
        for workers in ("1", "3"):
            main(["verify", "--algebra", "hermitian:3", "--samples", "300", "--seed", "9", "--workers", workers])
            outs.append(capsys.readouterr().out)
        assert outs[0] == outs[1]

    @pytest.mark.parametrize("spec", ["hermitian", "hermitian:x", "hermitian:9", "poisson:1", "poisson:9", "magic:2"])
    def test_bad_algebra(self, spec, capsys):
        assert main(["verify", "--algebra", spec]) == 2
        assert "qtn: error:" in capsys.readouterr().err

    @pytest.mark.parametrize("args", [["--samples", "0"], ["--tol", "-1"], ["--a", "2"], ["--workers", "0"]])
    def test_bad_options(self, args):
        res = qtn("verify", "--algebra", "hermitian:2", *args)
        assert res.returncode == 2

    def test_missing_subcommand(self):
        assert qtn().returncode == 2


class TestCompose:
    def test_pass(self, capsys):
        assert main(["compose", "--left", "hermitian:2", "--right", "hermitian:2", "--samples", "100"]) == 0
        out = capsys.readouterr().out
        assert "hermitian:2*hermitian:2" in out and "closure" in out

    def test_mismatched(self, capsys):
        assert main(["compose", "--left", "hermitian:2", "--right", "realsym:2"]) == 2
        assert "qtn: error:" in capsys.readouterr().err

    def test_poisson_rejected(self):
        assert main(["compose", "--left", "poisson:2", "--right", "poisson:2"]) == 2


class TestCurrentAndInverse:
    def test_current_text(self, tmp_path, capsys):
        path = write_json(tmp_path, [1, 0, 0, 0, 0, 0, 1, 0])
        assert main(["current", "--in", path]) == 0
        assert capsys.readouterr().out.strip() == "j = [1, 0, 0, 0]  timelike_future"

    def test_current_json_null(self, tmp_path, capsys):
        path = write_json(tmp_path, [0, 0, 0, 0, 1, 0, 0, 0])
        assert main(["current", "--in", path, "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out) == {"j": [0.5, 0, 0, -0.5], "class": "null_future"}

    def test_current_stdin(self):
        res = qtn("current", "--in", "-", "--format", "json", stdin="[0,0,0,0,0,0,0,0]")
        assert res.returncode == 0
        assert json.loads(res.stdout)["class"] == "zero"

    def test_inverse(self, tmp_path, capsys):
        path = write_json(tmp_path, [2, 0, 0, 1, 0, 0, 1, 0])
        assert main(["inverse", "--in", path]) == 0
        values = json.loads(capsys.readouterr().out)
        inv = np.array([[values[0] + 1j * values[1], values[4] + 1j * values[5]],
                        [values[2] + 1j * values[3], values[6] + 1j * values[7]]])
        np.testing.assert_allclose(inv @ np.array([[2, 0], [1j, 1]]), np.eye(2), atol=1e-15)

    def test_inverse_null_divisor(self, tmp_path, capsys):
        path = write_json(tmp_path, [1, 0, 1, 0, 1, 0, 1, 0])
        assert main(["inverse", "--in", path]) == 1
        assert "null divisor" in capsys.readouterr().err

    @pytest.mark.parametrize(
        "content",
        ["not json", "[1, 2, 3]", '{"a": 1}', '[1,0,0,0,0,0,"x",0]', "[NaN,0,0,0,0,0,0,0]", "[1e400,0,0,0,0,0,0,0]"],
    )
    @pytest.mark.parametrize("command", ["current", "inverse"])
    def test_malformed(self, tmp_path, capsys, command, content):
        path = write_json(tmp_path, content)
        assert main([command, "--in", path]) == 2
        assert "qtn: error:" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        res = qtn("inverse", "--in", str(tmp_path / "absent.json"))
        assert res.returncode == 2
        assert "qtn: error:" in res.stderr


def test_console_script_entry_point():
    assert cli.main is main
