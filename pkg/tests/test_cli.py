import json
import subprocess
import sys

import pytest

from hankel_walks.cli import main
from hankel_walks.serialize import FormatError, rat_to_str, str_to_rat
from oracles import CATALAN, FACTORIALS


def seq_file(tmp_path, terms, name="seq.json", a0=True):
    data = {"terms": [f"{t}/1" if isinstance(t, int) else t for t in terms]}
    if a0:
        data["a0"] = data["terms"][0]
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), out, err


def test_rational_strings():
    assert rat_to_str(3) == "3/1"
    assert rat_to_str(str_to_rat("6/4")) == "3/2"
    assert str_to_rat("3") == 3
    for bad in (1.5, "1/0", "x", None, True):
        with pytest.raises(FormatError):
            str_to_rat(bad)


def test_verify_catalan(tmp_path, capsys):
    code, rep, _, _ = run(capsys, "verify", "--k", "2", "--depth", "4", "--input", seq_file(tmp_path, CATALAN[:11]))
    assert code == 0 and rep["exit_code"] == 0 and rep["verdict"] == "verified"
    assert rep["result"]["b"] == ["1/1", "1/1", "3/1", "14/1", "84/1"]
    assert rep["witness"]["lambda"] == ["1/1", "2/1", "5/2", "29/10"]
    assert all(row["match"] for row in rep["comparison"])


def test_transform_k1_echo(tmp_path, capsys):
    terms = ["1/2", "3/4", "-5/3", "7/1"]
    code, rep, _, _ = run(capsys, "transform", "--k", "1", "--input", seq_file(tmp_path, terms))
    assert code == 0 and rep["result"]["terms"] == terms


def test_check_sm_refuted(tmp_path, capsys):
    code, rep, _, _ = run(capsys, "check-sm", "--input", seq_file(tmp_path, [1, 2, 1, 2]))
    assert code == 1 and rep["verdict"] == "refuted"
    assert rep["result"]["matrix"] == [["1/1", "2/1"], ["2/1", "1/1"]]
    assert str_to_rat(rep["result"]["quadratic_form"]) < 0


def test_check_sm_consistent(tmp_path, capsys):
    code, rep, _, _ = run(capsys, "check-sm", "--input", seq_file(tmp_path, CATALAN[:9]))
    assert code == 0 and rep["verdict"] == "consistent-at-depth" and rep["result"]["depth"] == 4


def test_byte_stable(tmp_path, capsys):
    f = seq_file(tmp_path, FACTORIALS[:9])
    _, _, first, _ = run(capsys, "verify", "--k", "2", "--input", f)
    _, _, second, _ = run(capsys, "verify", "--k", "2", "--input", f)
    assert first == second


def test_enumerate_then_extract_round_trip(tmp_path, capsys):
    weights = tmp_path / "w.json"
    weights.write_text(json.dumps({"lambda": ["1/2", "3/1", "2/7", "5/4"], "terminated": False}))
    seq, back = tmp_path / "a.json", tmp_path / "w2.json"
    code, rep, _, _ = run(capsys, "enumerate-moments", "--input", str(weights), "--n", "4", "--output", str(seq))
    assert code == 0 and rep["result"]["length"] == 5
    code, rep, _, _ = run(capsys, "extract-weights", "--input", str(seq), "--output", str(back))
    assert code == 0
    assert json.loads(back.read_text()) == json.loads(weights.read_text())


def test_extract_inconsistent(tmp_path, capsys):
    code, rep, _, _ = run(capsys, "extract-weights", "--input", seq_file(tmp_path, [1, 1, 1, 2]))
    assert code == 1 and rep["result"]["inconsistent_index"] == 3


def test_lgv_check(tmp_path, capsys):
    w = tmp_path / "w.json"
    w.write_text(json.dumps({"lambda": ["1/1", "1/1", "2/1", "2/1", "3/1", "3/1", "4/1", "4/1"], "terminated": False}))
    code, rep, _, _ = run(capsys, "lgv-check", "--input", str(w), "--k", "2", "--n", "3")
    assert code == 0 and rep["verdict"] == "verified"
    assert [r["lhs"] for r in rep["comparison"]] == ["1/1", "2/1", "12/1", "144/1"]


def test_walk_sum_graph_and_weights(tmp_path, capsys):
    g = tmp_path / "c4.json"
    g.write_text(json.dumps({"vertices": [0, 1, 2, 3], "edges": [[0, 1, "1"], [1, 2, "1"], [2, 3, "1"], [3, 0, "1"]], "root": 0}))
    code, rep, _, _ = run(capsys, "walk-sum", "--input", str(g), "--n", "3")
    assert code == 0 and rep["result"]["moments"] == ["1/1", "2/1", "8/1", "32/1"]
    w = tmp_path / "w.json"
    w.write_text(json.dumps({"lambda": ["1/1"] * 10, "terminated": False}))
    code, rep, _, _ = run(capsys, "walk-sum", "--input", str(w), "--k", "2", "--n", "4")
    assert rep["result"]["moments"] == ["1/1", "1/1", "3/1", "14/1", "84/1"]


def test_lanczos_cycle(tmp_path, capsys):
    g = tmp_path / "c4.json"
    g.write_text(json.dumps({"vertices": [[0], [1], [2], [3]], "edges": [[0, 1, "1/1"], [1, 2, "1/1"], [2, 3, "1/1"], [0, 3, "1/1"]], "root": 0}))
    code, rep, _, _ = run(capsys, "lanczos", "--input", str(g), "--depth", "4")
    assert code == 0
    assert rep["result"] == {"beta_sq": ["2/1", "2/1"], "terminated": True, "rank": 2}
    assert [r["lhs"] for r in rep["comparison"]] == ["1/1", "2/1", "8/1", "32/1", "128/1"]


@pytest.mark.parametrize(
    "argv, err",
    [
        (["transform", "--k", "5"], "InsufficientTerms"),
        (["transform"], "--k is required"),
        (["walk-sum", "--n", "2"], "expects a weights or graph file"),
    ],
)
def test_errors_exit_2(tmp_path, capsys, argv, err):
    code, rep, _, stderr = run(capsys, *argv, "--input", seq_file(tmp_path, [1, 1, 2]))
    assert code == 2 and rep["verdict"] == "error" and err in stderr
    assert len(stderr.strip().splitlines()) == 1


def test_bad_files(tmp_path, capsys):
    p = tmp_path / "x.json"
    p.write_text("[1, 2]")
    assert run(capsys, "check-sm", "--input", str(p))[0] == 2
    p.write_text(json.dumps({"a0": "2/1", "terms": ["1/1"]}))
    assert run(capsys, "check-sm", "--input", str(p))[0] == 2
    p.write_text(json.dumps({"terms": [0.5]}))
    assert run(capsys, "check-sm", "--input", str(p))[0] == 2
    assert run(capsys, "check-sm", "--input", str(tmp_path / "missing.json"))[0] == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "hankel_walks", "check-sm", "--input", seq_file(tmp_path, [1, 2, 1, 2])],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["verdict"] == "refuted"
