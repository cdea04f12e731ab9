"""CLI contract tests: exit codes, stream discipline, formats, selftest."""

import json
import math

import pytest

from deginv import cli, selftest, theta
from deginv.selftest import GROUPS


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_success_path(self, capsys):
        code, out, err = run_cli(capsys, "compute", "delta1", "--omega-re", "0",
                                 "--omega-im", "2")
        assert code == 0
        assert err == ""
        assert "delta" in out

    def test_missing_flag_is_exit_2(self, capsys):
        code, out, err = run_cli(capsys, "compute", "delta1")
        assert code == 2
        assert "--omega-im" in err
        assert out == ""

    def test_unknown_flag_is_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "compute", "delta1", "--omega-im", "2",
                               "--bogus", "1")
        assert code == 2

    def test_bad_precision_is_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "compute", "delta1", "--omega-im", "2",
                               "--precision", "30")
        assert code == 2
        assert "--precision" in err

    def test_domain_error_is_exit_3(self, capsys):
        code, out, err = run_cli(capsys, "compute", "green", "--omega-im", "1",
                                 "--u-re", "0", "--u-im", "0")
        assert code == 3
        assert "domain error" in err
        assert out == ""

    def test_accuracy_error_is_exit_4(self, capsys):
        # eta below the default radius cap at Im omega just above the cutoff
        code, _, err = run_cli(capsys, "compute", "eta", "--omega-im", "0.05",
                               "--max-radius", "4")
        assert code == 4
        assert "accuracy error" in err

    def test_vanishing_error_is_exit_4(self, capsys):
        code, _, err = run_cli(capsys, "compute", "beta2",
                               "--o11-re", "0", "--o11-im", "1",
                               "--o12-re", "0", "--o12-im", "0",
                               "--o22-re", "0", "--o22-im", "2")
        assert code == 4

    def test_fit_error_is_exit_5(self, capsys):
        code, _, err = run_cli(capsys, "sweep", "separating",
                               "--omega1-im", "1", "--omega2-im", "1.5",
                               "--at", "0.01")
        assert code == 5
        assert "fit error" in err


class TestComputeValues:
    def test_theta1_at_origin_prints_zero(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "theta1", "--z-re", "0", "--z-im", "0",
                               "--omega-re", "0", "--omega-im", "1", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert abs(payload["re"]) < 1e-14 and abs(payload["im"]) < 1e-14

    def test_delta1_matches_library(self, capsys):
        from deginv import EllipticCurveData, UpperHalfPoint, delta_elliptic
        code, out, _ = run_cli(capsys, "compute", "delta1", "--omega-im", "2",
                               "--format", "json", "--precision", "17")
        expected = delta_elliptic(EllipticCurveData(UpperHalfPoint(0, 2)))
        assert code == 0
        assert json.loads(out)["delta"] == pytest.approx(expected, abs=1e-12)

    def test_lambda_requires_inputs(self, capsys):
        code, _, err = run_cli(capsys, "compute", "lambda", "--h", "2", "--phi", "0")
        assert code == 2
        assert "--delta" in err

    def test_beta_limit_evaluator(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "beta-limit", "--mode", "nonseparating",
                               "--h", "1", "--phi", "0", "--delta", "0", "--g-ab", "0",
                               "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["slope"] == 2.0 and payload["log_log_coeff"] == 10.0
        assert payload["limit"] == pytest.approx(-50.0 / 3.0 * math.log(2 * math.pi), rel=1e-10)

    def test_phi_limit_requires_mode(self, capsys):
        code, _, err = run_cli(capsys, "compute", "phi-limit", "--h1", "1", "--h2", "1")
        assert code == 2
        assert "--mode" in err


SWEEP_ARGS = ("sweep", "nonseparating", "--omega-im", "1", "--u-re", "0.2",
              "--u-im", "0.3", "--start", "2", "--end", "6", "--points", "5")


class TestSweepOutput:
    def test_json_schema_and_values(self, capsys):
        code, out, err = run_cli(capsys, *SWEEP_ARGS, "--format", "json")
        assert code == 0 and err == ""
        payload = json.loads(out)
        assert list(payload) == ["mode", "family", "samples", "extrapolated_limit",
                                 "rhs", "discrepancy", "estimated_order"]
        assert payload["mode"] == "nonseparating"
        assert len(payload["samples"]) == 5
        assert set(payload["samples"][0]) == {"param", "value"}
        assert payload["discrepancy"] < 1e-8

    def test_json_round_trip_is_byte_stable(self, capsys):
        for precision in ("12", "17"):
            code, out, _ = run_cli(capsys, *SWEEP_ARGS, "--format", "json",
                                   "--precision", precision)
            assert code == 0
            reparsed = json.loads(out)
            re_serialized = json.dumps(cli._round_floats(reparsed, int(precision))) + "\n"
            assert re_serialized == out

    def test_csv_layout(self, capsys):
        code, out, _ = run_cli(capsys, *SWEEP_ARGS, "--format", "csv")
        assert code == 0
        lines = out.split("\n")
        assert lines[0] == "param,value"
        assert len([l for l in lines if l and not l.startswith("#")]) == 6  # header + 5 rows
        comments = [l for l in lines if l.startswith("#")]
        assert [c.split(" = ")[0] for c in comments] == [
            "# extrapolated_limit", "# rhs", "# discrepancy", "# estimated_order"]
        assert not out.endswith("\r\n") and out.endswith("\n")

    def test_output_file_destination(self, capsys, tmp_path):
        path = tmp_path / "sweep.json"
        code, out, _ = run_cli(capsys, *SWEEP_ARGS, "--format", "json",
                               "--output", str(path))
        assert code == 0
        assert out == ""  # nothing on stdout when a destination is given
        assert json.loads(path.read_text())["mode"] == "nonseparating"

    def test_separating_sweep_discrepancy(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "separating",
                               "--omega1-im", "1", "--omega2-im", "1.5",
                               "--start", "1e-2", "--end", "1e-5", "--points", "7",
                               "--format", "json")
        assert code == 0
        assert json.loads(out)["discrepancy"] < 1e-4

    def test_env_thread_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("DEGINV_THREADS", "3")
        code, out, _ = run_cli(capsys, *SWEEP_ARGS, "--format", "json")
        assert code == 0
        assert json.loads(out)["discrepancy"] < 1e-8


class TestSelftest:
    def test_clean_build_passes(self, capsys):
        code, out, err = run_cli(capsys, "selftest")
        assert code == 0
        assert err == ""
        listed = [line.split()[0] for line in out.strip().split("\n")]
        assert listed == list(GROUPS)
        assert all("PASS" in line for line in out.strip().split("\n"))

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "selftest", "--format", "json")
        payload = json.loads(out)
        assert code == 0 and payload["passed"] is True
        assert [g["name"] for g in payload["groups"]] == list(GROUPS)

    def test_parity_fault_injection_fails_even_count_group(self, capsys, monkeypatch):
        # simulate a parity bug: the library reports one even characteristic too few
        broken = theta.even_characteristics()[:-1]
        monkeypatch.setattr(theta, "even_characteristics", lambda: broken)
        code, out, err = run_cli(capsys, "selftest")
        assert code == 1
        assert "even-characteristics" in err
        first_line = out.strip().split("\n")[0]
        assert first_line.startswith("even-characteristics") and "FAIL" in first_line
