import io
import json
import subprocess
import sys

import pytest

from schubert_lab import cli
from schubert_lab import verify as V


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def last_json(text):
    return json.loads(text.strip().splitlines()[-1])


def test_schubert_132():
    code, out, _ = call("schubert", "--w", "132")
    assert code == 0
    rep = last_json(out)
    assert rep["status"] == "ok" and rep["command"] == "schubert"
    assert rep["result"] == {"arity": 3, "terms": [{"exp": [1, 0, 0], "coeff": 1}, {"exp": [0, 1, 0], "coeff": 1}]}
    assert "millis" in rep


@pytest.mark.parametrize("argv,token", [
    (("schubert", "--w", "121"), "repeated"),
    (("schubert", "--w", "1,x,3"), "'x'"),
    (("gt", "enumerate", "--lambda", "1,2"), "1,2"),
    (("gt", "enumerate", "--lambda", "2,a"), "'a'"),
    (("minkowski", "enumerate", "--family", "0;1,x"), "'x'"),
    (("minkowski", "verify", "--w", "3142"), "3142"),
])
def test_input_errors_exit_2(argv, token):
    code, out, err = call(*argv)
    assert code == 2
    assert token in err
    rep = last_json(out)
    assert rep["status"] == "error" and token in rep["error"]


def test_usage_error_exit_2():
    code, _, _ = call("gt", "explode", "--lambda", "1")
    assert code == 2
    code, _, _ = call()
    assert code == 2


def test_mismatch_exit_1(monkeypatch):
    monkeypatch.setattr(V, "flow_equivalence_row", lambda lam: {"ok": False, "gtCount": 1, "flowCount": 2})
    code, out, _ = call("flow", "equiv", "--lambda", "1,0")
    assert code == 1
    rep = last_json(out)
    assert rep["status"] == "mismatch" and rep["result"] == {"gtCount": 1, "flowCount": 2}


def test_deterministic_is_byte_identical():
    runs = [call("--deterministic", "verify", "theorem1", "--n", "4", "--samples", "3", "--seed", "7")
            for _ in range(2)]
    assert runs[0][1] == runs[1][1]
    assert "millis" not in runs[0][1]
    code, out, _ = call("gt", "schur", "--lambda", "2,1,0", "--deterministic")
    assert code == 0 and "millis" not in out


def test_verify_streams_json_lines():
    code, out, _ = call("--deterministic", "verify", "theorem1", "--n", "3")
    lines = [json.loads(x) for x in out.strip().splitlines()]
    assert code == 0
    assert len(lines) == 1 + 2 + 6 + 1
    assert all(row["criterion"] == "A1" and row["status"] == "ok" for row in lines[:-1])
    assert lines[-1]["command"] == "verify theorem1"
    assert lines[-1]["result"]["checks"][0]["instances"] == 9


def test_verify_single_permutation():
    code, out, _ = call("--deterministic", "verify", "theorem1", "--w", "256413")
    lines = [json.loads(x) for x in out.strip().splitlines()]
    assert code == 0 and lines[0]["w"] == [2, 5, 6, 4, 1, 3]
    assert {"w", "columnConvex", "latticeCount", "equalSchubert", "equalCharacter"} <= lines[0].keys()


def test_verify_out_file(tmp_path):
    target = tmp_path / "rows.jsonl"
    code, out, _ = call("--deterministic", "verify", "theorem1", "--n", "3", "--out", str(target))
    assert code == 0
    assert len(out.strip().splitlines()) == 1
    rows = target.read_text().strip().splitlines()
    assert len(rows) == 9


def test_verify_theorem2_small():
    code, out, _ = call("verify", "theorem2", "--max-parts", "3", "--max-part", "2")
    assert code == 0 and last_json(out)["status"] == "ok"


def test_threads_preserve_output(monkeypatch):
    argv = ("--deterministic", "verify", "theorem1", "--n", "4")
    monkeypatch.setenv("SCHUBERT_LAB_THREADS", "1")
    serial = call(*argv)
    monkeypatch.setenv("SCHUBERT_LAB_THREADS", "3")
    parallel = call(*argv)
    assert serial == parallel and serial[0] == 0


def test_other_commands():
    code, out, _ = call("gt", "enumerate", "--lambda", "1,0")
    assert code == 0 and last_json(out)["result"]["points"] == [[1, 0, 0], [1, 0, 1]]
    code, out, _ = call("gt", "transform", "--lambda", "1,0", "--specialize")
    assert last_json(out)["result"]["terms"] == [{"exp": [1, 0], "coeff": 1}, {"exp": [0, 1], "coeff": 1}]
    code, out, _ = call("flow", "build", "--lambda", "1,0")
    assert last_json(out)["result"]["netflow"] == [1, 0, 0, -1]
    code, out, _ = call("flow", "enumerate", "--lambda", "2,1,0")
    assert last_json(out)["result"]["count"] == 8
    code, out, _ = call("flow", "vertices", "--lambda", "1,0,0")
    assert last_json(out)["result"]["count"] == 3
    code, out, _ = call("flow", "equiv", "--lambda", "2,1,0", "--dilate", "2")
    assert code == 0
    code, out, _ = call("minkowski", "enumerate", "--w", "132")
    assert code == 0 and last_json(out)["result"]["count"] == 2
    code, out, _ = call("minkowski", "system", "--family", "0;1,0")
    assert code == 0 and last_json(out)["result"]["constraints"]
    code, out, _ = call("character", "--diagram", '{"rows": 2, "boxes": [[1, 1]]}')
    assert last_json(out)["result"]["terms"] == [{"exp": [1, 0], "coeff": 1}]
    code, out, _ = call("minkowski", "verify", "--w", "256413")
    assert code == 0 and last_json(out)["result"]["equalSchubert"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "schubert_lab.cli", "schubert", "--w", "121"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert "not a permutation" in proc.stderr
