import argparse
import csv
import io
import json
import subprocess
import sys

import pytest

from polyhermite.cli import (
    IncompatibleReport,
    load_report,
    main,
    parse_complex,
    report_schema_version,
)


def run_cli(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


@pytest.mark.parametrize(
    "token, value",
    [("1+0i", 1 + 0j), ("1.5-2i", 1.5 - 2j), ("-3", -3 + 0j), ("2.5i", 2.5j), ("i", 1j), ("-i", -1j), ("1e-3+2e2i", 1e-3 + 200j)],
)
def test_parse_complex(token, value):
    assert parse_complex(token) == value


@pytest.mark.parametrize("token", ["1 + 2i", "abc", "1+", "nan", "1+2j"])
def test_parse_complex_rejects(token):
    with pytest.raises(argparse.ArgumentTypeError, match="cannot parse|not finite"):
        parse_complex(token)


def test_eval_squeezed_example(capsys):
    status, out, _ = run_cli(capsys, "eval", "--family", "squeezed", "-m", "1", "-n", "1", "--tau", "0.6", "--z", "1+0i", "--no-timestamp")
    assert status == 0
    rec = json.loads(out)
    assert rec["value"]["re"] == pytest.approx(0.3, abs=1e-14)
    assert rec["schema_version"] == report_schema_version() == "1.0.0"
    assert "timestamp" not in rec


def test_eval_csv_digits(capsys):
    _, out, _ = run_cli(capsys, "eval", "--family", "rescaled", "-m", "3", "--tau", "0.3", "--z", "0.7", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:3] == ["family", "m", "n"]
    value = float(rows[1][6])
    # 17 significant digits round-trip the double exactly
    assert f"{value:.17g}" == rows[1][6]
    assert value == pytest.approx(0.7**3 - 3 * 0.3 * 0.7, rel=1e-14)


def test_tau_out_of_range_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--family", "squeezed", "--tau", "1.2", "--z", "1"])
    assert exc.value.code == 2
    assert "TauOutOfRange" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--family", "real", "--bogus"],
        ["eval", "--family", "real", "--ta", "0.3"],
        ["sample", "--threads", "0"],
        ["eval", "--family", "real", "--z", "1 + 2i"],
    ],
)
def test_bad_flags_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_timestamp_present_by_default(capsys):
    _, out, _ = run_cli(capsys, "grid", "--quad", "2", "--format", "json")
    assert "timestamp" in json.loads(out)


@pytest.mark.parametrize(
    "argv",
    [
        ["kernel", "-n", "2", "--tau", "0.4", "--probes", "5", "--seed", "3"],
        ["sample", "-N", "16", "--trials", "3", "--seed", "9", "--format", "json"],
        ["grid", "--quad", "4", "--tau", "0.2", "--format", "json"],
        ["verify", "--suite", "quadrature", "--format", "json"],
    ],
)
def test_byte_identical_reruns(argv, capsys):
    _, a, _ = run_cli(capsys, *argv, "--no-timestamp")
    _, b, _ = run_cli(capsys, *argv, "--no-timestamp")
    assert a == b and a


def test_kernel_csv(capsys):
    status, out, _ = run_cli(capsys, "kernel", "-n", "1", "--tau", "0.5", "--z", "1", "--w", "0")
    assert status == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    assert float(rows[0]["closed_re"]) == pytest.approx(1.168201, abs=1e-6)
    assert float(rows[0]["ratio_re"]) == pytest.approx(1.0, abs=1e-12)


def test_sample_csv_and_summary(capsys, tmp_path):
    summary = tmp_path / "s.json"
    status, out, _ = run_cli(capsys, "sample", "-N", "8", "--tau", "0.3", "--seed", "4", "--summary", str(summary))
    assert status == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 8 and set(rows[0]) == {"seed", "index", "lambda_re", "lambda_im"}
    rec = load_report(summary.read_text())
    assert rec["N"] == 8 and rec["per_seed"][0]["seed"] == 4


def test_grid_csv_to_file(capsys, tmp_path):
    path = tmp_path / "g.csv"
    status, out, _ = run_cli(capsys, "grid", "--quad", "3", "--out", str(path))
    assert status == 0 and out == ""
    lines = path.read_text().splitlines()
    assert lines[0] == "x,y,weight" and len(lines) == 10


def test_verify_report(capsys):
    status, out, _ = run_cli(capsys, "verify", "--suite", "poly", "--no-timestamp")
    assert status == 0
    rec = load_report(out)
    assert rec["pass"] is True and rec["failed"] == []
    names = [c["check"] for c in rec["checks"]]
    assert len(names) == len(set(names))


def test_load_report_major_version():
    assert load_report(json.dumps({"schema_version": "1.4.2"}))["schema_version"] == "1.4.2"
    with pytest.raises(IncompatibleReport):
        load_report(json.dumps({"schema_version": "2.0.0"}))
    with pytest.raises(IncompatibleReport):
        load_report("{}")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "polyhermite", "eval", "--family", "real", "-m", "2", "--z", "1", "--format", "csv"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout.splitlines()[1].split(",")[6] == "2"
