import csv
import io
import json
import subprocess
import sys

import pytest

from plankcount import cli
from plankcount.core import BoundReport


def invoke(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_examples():
    s = cli.parse_args(["count", "--weights", "1,1", "--mode", "exact"])
    assert (s.subcommand, s.mode, s.weights) == ("count", "exact", [[1, 1]])
    s = cli.parse_args(["verify", "--weights", "0.6,0.8", "--tol", "1e-9"])
    assert (s.subcommand, s.mode, s.weights, s.tol) == ("verify", "float", [[0.6, 0.8]], 1e-9)
    s = cli.parse_args(["family", "--n", "5", "--k", "2", "--format", "csv"])
    assert (s.subcommand, s.n, s.k, s.output_format) == ("family", 5, 2, "csv")


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--bogus"],
        ["count"],
        ["count", "--weights", "1,x"],
        ["count", "--weights", "1.5,2", "--mode", "exact"],
        ["count", "--weights", "1,1", "--weights-file", "f.txt"],
        ["family", "--n", "3", "--k", "4"],
        ["family", "--n", "3", "--k-range", "2:5"],
        ["search", "--n", "3", "--lambda", "1.5"],
        ["sweep", "--n", "3", "--tol", "2"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.parse_args(argv)
    assert exc.value.code == 2


def test_verify_exact_tight_case(capsys):
    code, out, _ = invoke(["verify", "--weights", "1,1", "--mode", "exact"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert list(doc) == ["spec", "result", "checks", "timing_ms"]
    r = doc["result"]
    assert r["satisfied"] == 2 and r["ratio"] == 0.5
    assert r["pass_tomaszewski"] is True and r["pass_theorem1"] is True
    assert all(doc["checks"].values())


def test_family_csv(capsys):
    code, out, _ = invoke(["family", "--n", "20", "--k-range", "2:10", "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 9
    assert rows[0]["k"] == "2" and float(rows[0]["ratio"]) == 0.5
    assert [int(r["k"]) for r in rows] == list(range(2, 11))


def test_count_axis(capsys):
    code, out, _ = invoke(["count", "--weights", "1,0,0"], capsys)
    r = json.loads(out)["result"]
    assert code == 0 and (r["boundary"], r["inside"], r["outside"]) == (8, 0, 0)


def test_halfspace(capsys):
    code, out, _ = invoke(["halfspace", "--weights", "1,1,0"], capsys)
    r = json.loads(out)["result"]
    assert (r["strict_interior"], r["boundary"], r["closed"]) == (2, 0, 2)


def test_weights_file(tmp_path, capsys):
    f = tmp_path / "w.txt"
    f.write_text("# two vectors\n1,1\n\n3,4\n")
    code, out, _ = invoke(["count", "--weights-file", str(f), "--mode", "exact"], capsys)
    rows = json.loads(out)["result"]
    assert code == 0 and [r["satisfied"] for r in rows] == [2, 2]


def test_io_errors_exit_3(tmp_path, capsys):
    code, _, err = invoke(["count", "--weights-file", str(tmp_path / "missing.txt")], capsys)
    assert code == 3 and "missing.txt" in err
    code, _, _ = invoke(["count", "--weights", "1,1", "--out", str(tmp_path / "no" / "dir.json")], capsys)
    assert code == 3


def test_bad_file_contents_exit_2(tmp_path, capsys):
    f = tmp_path / "w.txt"
    f.write_text("1,abc\n")
    code, _, _ = invoke(["count", "--weights-file", str(f)], capsys)
    assert code == 2


def test_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, stdout, _ = invoke(["count", "--weights", "1,1", "--out", str(out)], capsys)
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["result"]["satisfied"] == 2


def test_failed_verification_exits_1(monkeypatch, capsys):
    bad = BoundReport(2, 1, 2, 1.41, 1.29, 0.25, False, False, False)
    monkeypatch.setattr(cli, "bound_report", lambda *a, **k: bad)
    code, out, _ = invoke(["verify", "--weights", "1,1"], capsys)
    assert code == 1
    assert json.loads(out)["checks"]["pass_tomaszewski"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--weights", "0.3,0.5,0.7,0.1"],
        ["verify", "--weights", "2,1,1", "--mode", "exact"],
        ["sweep", "--n-range", "2:6", "--samples", "5", "--seed", "9"],
        ["search", "--n", "4", "--restarts", "3", "--steps", "200", "--seed", "1"],
        ["family", "--n", "12"],
    ],
)
def test_byte_stable_and_csv_json_agree(argv, capsys):
    _, first, _ = invoke(argv, capsys)
    _, second, _ = invoke(argv, capsys)
    assert first == second
    _, as_csv, _ = invoke(argv + ["--format", "csv"], capsys)
    result = json.loads(first)["result"]
    rows = result if isinstance(result, list) else [result]
    parsed = list(csv.DictReader(io.StringIO(as_csv)))
    assert len(parsed) == len(rows)
    for row, rec in zip(parsed, rows):
        assert list(row) == list(rec)
        for key, value in rec.items():
            assert row[key] == cli._csv_value(value)


def test_timing_flag(capsys):
    _, out, _ = invoke(["count", "--weights", "1,1", "--timing"], capsys)
    assert isinstance(json.loads(out)["timing_ms"], float)


def test_env_default_workers(monkeypatch):
    monkeypatch.setenv("PLANKCOUNT_THREADS", "3")
    assert cli.parse_args(["count", "--weights", "1,1"]).workers == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "plankcount", "family", "--n", "5", "--k", "5"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"][0]["satisfied"] == 20
