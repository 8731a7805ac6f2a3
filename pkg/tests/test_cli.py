import json
import math
import re

import jsonschema
import numpy as np
import pytest

from hanson_wright import cli, linalg, verify
from hanson_wright.cli import main, parse_grid
from hanson_wright.exceptions import HansonWrightError


@pytest.fixture()
def offdiag_file(tmp_path):
    path = tmp_path / "offdiag2.json"
    linalg.write_matrix_json([[0.0, 1.0], [1.0, 0.0]], path)
    return str(path)


@pytest.fixture()
def identity_file(tmp_path):
    path = tmp_path / "eye2.csv"
    linalg.write_matrix_csv(np.eye(2), path)
    return str(path)


def run_json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


class TestParseGrid:
    def test_inclusive_endpoint(self):
        assert parse_grid("0:4:1").tolist() == [0.0, 1.0, 2.0, 3.0, 4.0]

    def test_fractional_step(self):
        got = parse_grid("0:0.15:0.05")
        assert got.tolist() == pytest.approx([0.0, 0.05, 0.10, 0.15], abs=1e-12)

    def test_rejects_malformed(self):
        for bad in ("1:2", "0:1:0", "2:1:0.5", "a:b:c"):
            with pytest.raises(HansonWrightError):
                parse_grid(bad)


class TestBoundCommand:
    def test_diagonal_free_values(self, capsys, offdiag_file):
        code, out = run_json(capsys, ["bound", "--matrix", offdiag_file, "--sigma2", "1",
                                      "--t", "2", "--lambda", "0.1"])
        assert code == 0
        assert (out["c1"], out["c2"]) == (2.0, 1.0)
        assert out["diagonal_free"] is True
        assert out["frob2"] == 2.0
        assert out["lambda_max"] == pytest.approx(1.0 / 3.0)
        assert out["mgf_bound"] == pytest.approx(math.exp(0.04), rel=1e-12)
        assert out["tail_bound"] == pytest.approx(2.0 * math.exp(-0.25), rel=1e-12)

    def test_general_regime_values(self, capsys, identity_file):
        code, out = run_json(capsys, ["bound", "--matrix", identity_file, "--sigma2", "1", "--t", "4"])
        assert code == 0
        assert (out["c1"], out["c2"]) == (20.0, 4.0)
        assert out["tail_bound"] == pytest.approx(2.0 * math.exp(-0.1), rel=1e-12)

    def test_zero_matrix_unbounded_domain_serializes_null(self, capsys, tmp_path):
        path = tmp_path / "zero.json"
        linalg.write_matrix_json(np.zeros((2, 2)), path)
        code, out = run_json(capsys, ["bound", "--matrix", str(path), "--sigma2", "1"])
        assert code == 0
        assert out["lambda_max"] is None

    def test_missing_file_exits_2(self, capsys):
        assert main(["bound", "--matrix", "nope.json", "--sigma2", "1"]) == 2
        assert "error" in capsys.readouterr().err

    def test_bad_sigma2_exits_2(self, offdiag_file):
        assert main(["bound", "--matrix", offdiag_file, "--sigma2", "-1"]) == 2

    def test_lambda_outside_domain_exits_2(self, identity_file):
        assert main(["bound", "--matrix", identity_file, "--sigma2", "1", "--lambda", "0.1"]) == 2


class TestSimulateCommand:
    def test_tail_run_json(self, capsys, offdiag_file):
        code, out = run_json(capsys, [
            "simulate", "--matrix", offdiag_file, "--dist", "rademacher",
            "--samples", "20000", "--t-grid", "0:4:2", "--seed", "7",
        ])
        assert code == 0
        assert out["kind"] == "tail" and out["all_passed"]
        assert [c["at"] for c in out["checks"]] == [0.0, 2.0, 4.0]
        assert out["checks"][0]["estimate"] == 1.0

    def test_mgf_run_csv(self, capsys, offdiag_file):
        code = main(["simulate", "--matrix", offdiag_file, "--dist", "gaussian:1",
                     "--samples", "20000", "--lambda-grid", "0:0.1:0.05", "--format", "csv"])
        lines = capsys.readouterr().out.strip().splitlines()
        assert code == 0
        assert lines[0] == "t_or_lambda,estimate,ci_low,ci_high,bound,pass"
        assert len(lines) == 4
        assert lines[1].startswith("0,1,1,1,1,true")

    def test_zero_matrix_degenerate_notice(self, capsys, tmp_path):
        path = tmp_path / "zero.json"
        linalg.write_matrix_json(np.zeros((3, 3)), path)
        code, out = run_json(capsys, ["simulate", "--matrix", str(path), "--dist", "uniform:1",
                                      "--samples", "5000", "--t-grid", "0:1:0.5"])
        assert code == 0
        assert any("degenerate" in note for note in out["notes"])

    def test_constant_form_notice(self, capsys, identity_file):
        code, out = run_json(capsys, ["simulate", "--matrix", identity_file, "--dist", "rademacher",
                                      "--samples", "5000", "--t-grid", "0:1:0.5"])
        assert code == 0
        assert any("zero" in note for note in out["notes"])

    def test_dump_writes_samples(self, tmp_path, capsys, offdiag_file):
        dump = tmp_path / "samples.txt"
        code = main(["simulate", "--matrix", offdiag_file, "--dist", "rademacher",
                     "--samples", "1000", "--t-grid", "0:2:1", "--dump", str(dump)])
        capsys.readouterr()
        assert code == 0
        values = [float(line) for line in dump.read_text().splitlines()]
        assert len(values) == 1000
        assert set(values) <= {-2.0, 2.0}

    def test_requires_exactly_one_grid(self, offdiag_file):
        assert main(["simulate", "--matrix", offdiag_file, "--dist", "rademacher",
                     "--samples", "100"]) == 2
        assert main(["simulate", "--matrix", offdiag_file, "--dist", "rademacher",
                     "--samples", "100", "--t-grid", "0:1:1", "--lambda-grid", "0:0.1:0.1"]) == 2

    def test_bad_dist_exits_2(self, offdiag_file):
        assert main(["simulate", "--matrix", offdiag_file, "--dist", "poisson:1",
                     "--samples", "100", "--t-grid", "0:1:1"]) == 2


class TestVerifyCommand:
    def test_scalar_suite_report_is_schema_valid(self, capsys):
        code, out = run_json(capsys, ["verify", "--suite", "scalar", "--seed", "1"])
        assert code == 0
        jsonschema.validate(out, json.loads(verify.schema_text()))
        assert out["summary"]["failed"] == 0
        assert out["summary"]["total"] == len(out["checks"])

    def test_exit_zero_iff_no_failures(self, capsys):
        code, out = run_json(capsys, ["verify", "--suite", "exact", "--seed", "3"])
        assert code == 0 and out["summary"]["failed"] == 0

    def test_csv_format(self, capsys):
        code = main(["verify", "--suite", "scalar", "--format", "csv"])
        lines = capsys.readouterr().out.strip().splitlines()
        assert code == 0
        assert lines[0] == "id,category,pass,margin,details"
        assert all(",scalar," in line for line in lines[1:])

    def test_unknown_suite_exits_2(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["verify", "--suite", "everything"])
        assert err.value.code == 2

    def test_report_written_to_file(self, tmp_path, capsys):
        out_file = tmp_path / "report.json"
        code = main(["verify", "--suite", "scalar", "--out", str(out_file)])
        assert code == 0
        payload = json.loads(out_file.read_text())
        assert payload["suite"] == "scalar"

    def test_failed_check_exits_1(self, capsys, monkeypatch):
        doctored = verify.VerificationReport(
            version="0.0.0", suite="scalar", seed=0, mc_samples=0, timestamp="t",
            checks=(verify.Check(id="x", category="scalar", passed=False, margin=-1.0, details="d"),),
            summary={"total": 1, "passed": 0, "failed": 1},
        )
        monkeypatch.setattr(verify, "run_verification", lambda *a, **k: doctored)
        assert main(["verify", "--suite", "scalar"]) == 1

    def test_threads_default_comes_from_environment(self, monkeypatch):
        monkeypatch.setenv("HW_THREADS", "6")
        args = cli.build_parser().parse_args(["verify", "--suite", "scalar"])
        assert args.threads == 6
        monkeypatch.setenv("HW_THREADS", "junk")
        args = cli.build_parser().parse_args(["verify", "--suite", "scalar"])
        assert args.threads == 1


class TestReportCommand:
    def test_renders_table(self, tmp_path, capsys):
        report_file = tmp_path / "r.json"
        assert main(["verify", "--suite", "scalar", "--out", str(report_file)]) == 0
        capsys.readouterr()
        assert main(["report", str(report_file)]) == 0
        text = capsys.readouterr().out
        assert "scalar/log_inequality" in text
        assert re.search(r"total \d+  passed \d+  failed \d+", text)

    def test_unreadable_report_exits_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert main(["report", str(bad)]) == 2


class TestDeterminism:
    def test_identical_reports_modulo_timestamp(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["verify", "--suite", "exact", "--seed", "11", "--out", str(a)]) == 0
        assert main(["verify", "--suite", "exact", "--seed", "11", "--out", str(b)]) == 0
        strip = lambda p: re.sub(r'"timestamp": "[^"]*"', "TS", p.read_text())
        assert strip(a) == strip(b)

    def test_different_seed_changes_exact_suite_report(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["verify", "--suite", "exact", "--seed", "1", "--out", str(a)]) == 0
        assert main(["verify", "--suite", "exact", "--seed", "2", "--out", str(b)]) == 0
        strip = lambda p: re.sub(r'"timestamp": "[^"]*"', "TS", p.read_text())
        assert strip(a) != strip(b)


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as err:
        main(["--version"])
    assert err.value.code == 0
    assert "hw" in capsys.readouterr().out
