"""CLI surface: flags, exit codes, report formats, determinism."""

import json
from pathlib import Path

import jsonschema
import pytest

from sqdigits import cli

SCHEMA = json.loads(
    (Path(__file__).resolve().parents[1] / "src" / "sqdigits" / "report_schema.json").read_text()
)


def run_cli(args, tmp_path, name="report.json"):
    out = tmp_path / name
    code = cli.main(args + ["--output", str(out)])
    return code, out


def test_equidist_report(tmp_path):
    code, out = run_cli(["equidist", "--q", "2", "--m", "2", "--x", "1e5"], tmp_path)
    assert code == 0
    report = json.loads(out.read_text())
    jsonschema.validate(report, SCHEMA)
    assert report["schema"] == "report-v1"
    assert report["results"]["pi_x"] == 9592
    assert sum(report["results"]["counts"]) == 9592


def test_equidist_1e7(tmp_path):
    code, out = run_cli(["equidist", "--q", "2", "--m", "2", "--x", "1e7"], tmp_path)
    assert code == 0
    results = json.loads(out.read_text())["results"]
    assert results["pi_x"] == 664579
    assert results["max_rel_discrepancy"] <= 0.01


def test_verify_exit_zero_and_schema(tmp_path):
    code, out = run_cli(["verify", "--q", "2", "--gamma", "1/2", "--seed", "7"], tmp_path)
    assert code == 0
    report = json.loads(out.read_text())
    jsonschema.validate(report, SCHEMA)
    assert all(row["pass"] for row in report["results"])


def test_reports_byte_identical(tmp_path):
    _, out1 = run_cli(["expsum", "--family", "gauss-complete", "--seed", "3"], tmp_path, "a.json")
    _, out2 = run_cli(["expsum", "--family", "gauss-complete", "--seed", "3"], tmp_path, "b.json")
    assert out1.read_bytes() == out2.read_bytes()
    _, out3 = run_cli(["expsum", "--family", "gauss-complete", "--seed", "4"], tmp_path, "c.json")
    assert out1.read_bytes() != out3.read_bytes()


def test_csv_format(tmp_path):
    code, out = run_cli(
        ["expsum", "--family", "geometric", "--seed", "2", "--format", "csv"],
        tmp_path,
        "report.csv",
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "suite,label,exact,bound,ratio,pass"
    assert len(lines) == 201  # header + one row per instance


def test_csv_scalar_report(tmp_path):
    code, out = run_cli(["constants", "--q", "2", "--gamma", "1/2", "--format", "csv"],
                        tmp_path, "c.csv")
    assert code == 0
    text = out.read_text()
    assert text.startswith("key,value")
    assert "eta" in text


def test_constants_improper_diagnostic(tmp_path):
    code, out = run_cli(["constants", "--q", "13", "--gamma", "1/3"], tmp_path)
    assert code == 0
    results = json.loads(out.read_text())["results"]
    assert results["proper"] is False
    assert "improper" in results["diagnostic"]


def test_constants_values(tmp_path):
    code, out = run_cli(["constants", "--q", "2", "--gamma", "1/2"], tmp_path)
    assert code == 0
    results = json.loads(out.read_text())["results"]
    assert results["proper"] and results["c_bound_holds"] and results["eta_bound_holds"]
    assert abs(results["eta"] - 0.5) < 1e-8


def test_typesums_report(tmp_path):
    code, out = run_cli(
        ["typesums", "--q", "2", "--gamma", "1/2", "--mu", "4", "--nu", "6", "--seed", "5"],
        tmp_path,
    )
    assert code == 0
    report = json.loads(out.read_text())
    jsonschema.validate(report, SCHEMA)
    results = report["results"]
    assert results["plan"]["out_of_regime"]  # thue-morse eta = 1/2
    assert results["S20_normalized"] <= 1.0
    assert results["SI_max_over_t"] >= results["SI"] - 1e-12


def test_decay_report(tmp_path):
    code, out = run_cli(
        ["decay", "--q", "2", "--gamma", "1/2", "--xs", "1e3,1e4,1e5"], tmp_path
    )
    assert code == 0
    results = json.loads(out.read_text())["results"]
    assert results["fitted_exponent"] < 0
    assert len(results["values"]) == 3


def test_usage_errors():
    assert cli.main(["equidist", "--gamma", "0.5"]) == cli.EXIT_USAGE
    assert cli.main(["nonsense"]) == cli.EXIT_USAGE
    assert cli.main(["equidist", "--q", "1", "--m", "2"]) == cli.EXIT_USAGE


def test_capacity_exit():
    assert cli.main(["equidist", "--x", "1e12"]) == cli.EXIT_CAPACITY


def test_threads_validation():
    assert cli.main(["equidist", "--x", "100", "--threads", "0"]) == cli.EXIT_USAGE


def test_improper_gamma_verify_is_usage_error():
    assert cli.main(["verify", "--q", "3", "--gamma", "1/2"]) == cli.EXIT_USAGE


def test_gamma_parsing():
    with pytest.raises(Exception):
        cli._parse_gamma("0.5")
    assert cli._parse_gamma("3/7") == "3/7"
    assert cli._parse_gamma("-1/2") == "-1/2"
    assert cli._parse_gamma("2") == "2"
