import json
import subprocess
import sys

import pytest

from quadtors.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_67(capsys):
    code, out, _ = run(capsys, "analyze", "--m", "67", "--p", "3")
    assert code == 0
    assert '"delta_eps":2' in out and '"delta_eta":1' in out and '"pb_normique":true' in out


def test_analyze_is_byte_identical(capsys):
    _, a, _ = run(capsys, "analyze", "--m", "72262", "--extended")
    _, b, _ = run(capsys, "analyze", "--m", "72262", "--extended")
    assert a == b


def test_analyze_csv(capsys):
    code, out, _ = run(capsys, "analyze", "--m", "67", "--format", "csv")
    header, row = out.strip().splitlines()
    assert header.startswith("m,D,p,h,h0") and row.startswith("67,268,3,1,1")


def test_rayclass_2917(capsys):
    code, out, _ = run(capsys, "rayclass", "--D", "2917", "--p", "3")
    obj = json.loads(out)
    assert code == 0 and obj["rank"] == 2 and obj["p_part"] == [9, 3]


@pytest.mark.parametrize("argv,kind", [
    (["analyze", "--m", "12"], "NotSquarefree"),
    (["analyze", "--m", "5"], "NotSplit"),
    (["analyze", "--m", "3"], "Ramified"),
])
def test_domain_errors_exit_2(capsys, argv, kind):
    code, out, _ = run(capsys, *argv)
    assert code == 2
    assert json.loads(out)["error"] == kind
    assert len(out.strip().splitlines()) == 1


@pytest.mark.parametrize("argv", [[], ["analyze"], ["analyze", "--m", "x"], ["bogus"],
                                  ["survey-relations", "--m", "7249", "--pool", "937"]])
def test_usage_errors_exit_64(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 64 and "usage" in err.lower()


def test_solve_norm(capsys):
    code, out, _ = run(capsys, "solve-norm", "--m", "67", "--N", "181")
    obj = json.loads(out)
    assert code == 0 and obj["solutions"] and obj["N"] == 181


def test_scan_json_lines(capsys):
    code, out, _ = run(capsys, "scan", "--p", "3", "--bd", "268", "--BD", "268", "--jobs", "1")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 1 and json.loads(lines[0])["m"] == 67


def test_survey_envelope(capsys):
    code, out, _ = run(capsys, "survey-orders", "--m", "10942", "--n", "2", "--bl", "1e6", "--jobs", "1")
    obj = json.loads(out)
    assert code == 0
    assert {"m", "p", "n", "BL", "elapsed_ms", "histogram"} <= set(obj)
    assert obj["BL"] == 10**6 and obj["histogram"]["kind"] == "orders"


def test_survey_relations_envelope_records_seed(capsys, tmp_path):
    path = tmp_path / "rel.csv"
    code, _, _ = run(capsys, "survey-relations", "--m", "7249", "--pool", "937,883,811", "--trials", "20",
                     "--seed", "42", "--jobs", "1", "--format", "csv", "--output", str(path))
    assert code == 0
    assert path.read_text().splitlines()[0] == "label,count,proportion,expected"
    meta = json.loads((tmp_path / "rel.csv.meta.json").read_text())
    assert meta["seed"] == 42 and meta["trials"] == 20 and meta["pool"] == [937, 883, 811]


def test_jobs_environment(capsys, monkeypatch):
    monkeypatch.setenv("QUADTORS_JOBS", "1")
    code, out, _ = run(capsys, "survey-ell-units", "--m", "72262", "--n", "2", "--bl", "1e6", "--r", "3")
    assert code == 0 and json.loads(out)["r"] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quadtors", "analyze", "--m", "67"], capture_output=True, text=True)
    assert proc.returncode == 0 and '"pb_normique":true' in proc.stdout
