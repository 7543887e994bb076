import json
import shutil
import subprocess
import sys
from fractions import Fraction

import pytest

from cgm.cli import ScanSpec, main, parse_number, parse_range, run_scan, _cell_value


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def last_json(stdout: str) -> dict:
    return json.loads(stdout.strip().splitlines()[-1])


class TestFlagParsing:
    def test_rationals(self):
        assert parse_number("16/3") == Fraction(16, 3)
        assert parse_number("0.05") == Fraction(1, 20)
        assert parse_number("-2") == -2
        assert isinstance(parse_number("-2"), int)

    def test_ranges(self):
        lo, hi, step = parse_range("-9:3:0.05")
        assert (lo, hi, step) == (-9, 3, Fraction(1, 20))
        with pytest.raises(Exception):
            parse_range("1:2")
        with pytest.raises(Exception):
            parse_range("3:1:0.5")


class TestClassifyCommand:
    def test_cheeger_gromoll_with_curvature(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "--p", "1", "--q", "1", "--n", "3", "--c", "1")
        assert code == 0
        payload = last_json(out)
        assert payload["in_gamma"] is True
        assert payload["scalar_at_zero"] == 24.0

    def test_sasaki_all_false(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "--p", "0", "--q", "0", "--n", "3")
        assert code == 0
        payload = last_json(out)
        assert payload["in_gamma"] is False and payload["in_gamma_prime"] is False

    def test_exact_rational_boundary(self, capsys):
        code, out, _ = run_cli(
            capsys, "classify", "--p", "2", "--q", "-1", "--n", "3", "--c", "16/3"
        )
        assert code == 0
        assert last_json(out)["in_delta"] is True

    def test_usage_error_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["classify", "--p", "1", "--n", "3"])  # missing --q
        assert exc.value.code == 2
        assert main(["classify", "--p", "1", "--q", "1", "--n", "1"]) == 2


class TestScanCommand:
    def test_gamma_scan_golden_cells(self, tmp_path, capsys):
        csv = tmp_path / "gamma.csv"
        code, _, _ = run_cli(
            capsys, "scan", "--p-range=-1:3:0.5", "--q-range=-1:2:0.5",
            "--n", "3", "--predicate", "gamma", "--csv", str(csv),
        )
        assert code == 0
        raw = csv.read_bytes()
        assert b"\r" not in raw  # LF endings
        lines = raw.decode("utf-8").splitlines()
        assert lines[0] == "p,q,predicate,value"
        table = {(row.split(",")[0], row.split(",")[1]): row.split(",")[3] for row in lines[1:]}
        assert table[("1", "1")] == "1"
        assert table[("2", "0")] == "1"
        assert table[("0", "0")] == "0"

    def test_delta_scan_c6_has_no_axis_cells(self, tmp_path, capsys):
        csv = tmp_path / "delta.csv"
        code, _, _ = run_cli(
            capsys, "scan", "--p-range", "0:3:0.25", "--q-range", "0:0:1",
            "--n", "3", "--c", "6", "--predicate", "delta", "--csv", str(csv),
        )
        assert code == 0
        rows = csv.read_text().splitlines()[1:]
        assert all(row.split(",")[3] == "0" for row in rows)

    def test_predicate_requires_c(self, tmp_path, capsys):
        code, _, err = run_cli(
            capsys, "scan", "--p-range", "0:1:1", "--q-range", "0:1:1",
            "--n", "3", "--predicate", "delta", "--csv", str(tmp_path / "x.csv"),
        )
        assert code == 2 and "--c" in err

    def test_byte_identical_across_thread_counts(self, tmp_path, capsys, monkeypatch):
        outputs = []
        for threads in ("1", "4"):
            monkeypatch.setenv("CGM_THREADS", threads)
            csv = tmp_path / f"scan{threads}.csv"
            svg = tmp_path / f"scan{threads}.svg"
            code, _, _ = run_cli(
                capsys, "scan", "--p-range=-9:3:0.5", "--q-range=-3:3:0.5",
                "--n", "2", "--predicate", "gamma_prime", "--csv", str(csv), "--svg", str(svg),
            )
            assert code == 0
            outputs.append((csv.read_bytes(), svg.read_bytes()))
        assert outputs[0] == outputs[1]

    def test_csv_round_trip(self, tmp_path, capsys):
        csv = tmp_path / "round.csv"
        code, _, _ = run_cli(
            capsys, "scan", "--p-range=-2:2:0.35", "--q-range=-1:1:0.3",
            "--n", "3", "--c", "1", "--predicate", "scalar_sufficient", "--csv", str(csv),
        )
        assert code == 0
        spec = ScanSpec((-2, 2, Fraction(35, 100)), (-1, 1, Fraction(3, 10)), 3, 1, "scalar_sufficient")
        rows = csv.read_text().splitlines()[1:]
        for row in rows[:: max(len(rows) // 20, 1)]:
            p_s, q_s, _, v_s = row.split(",")
            again = _cell_value(spec, float(p_s), float(q_s))
            assert abs(again - float(v_s)) <= 1e-10

    def test_svg_shape(self, tmp_path, capsys):
        svg = tmp_path / "img.svg"
        run_cli(
            capsys, "scan", "--p-range", "0:2:1", "--q-range", "0:2:1",
            "--n", "3", "--predicate", "gamma", "--csv", str(tmp_path / "img.csv"),
            "--svg", str(svg),
        )
        text = svg.read_text()
        assert text.startswith("<svg")
        assert 'xmlns="http://www.w3.org/2000/svg"' in text
        assert text.count("<rect") >= 9 + 3  # cells plus legend entries
        assert "hatch" in text

    def test_io_error_exit_3(self, tmp_path, capsys):
        code, _, err = run_cli(
            capsys, "scan", "--p-range", "0:1:1", "--q-range", "0:1:1",
            "--n", "3", "--predicate", "gamma",
            "--csv", str(tmp_path / "missing" / "dir" / "x.csv"),
        )
        assert code == 3 and "I/O" in err

    def test_grid_limit_guard(self, tmp_path, capsys):
        code, _, err = run_cli(
            capsys, "scan", "--p-range", "0:10000:0.001", "--q-range", "0:10000:0.001",
            "--n", "3", "--predicate", "gamma", "--csv", str(tmp_path / "x.csv"),
        )
        assert code == 2 and "cell limit" in err


class TestCurvatureCommand:
    def header_and_rows(self, out):
        lines = out.strip().splitlines()
        assert lines[0] == "t,K_hh_max_e,K_hv_max_e,K_vv_min,K_vv_U,scalar"
        return [line.split(",") for line in lines[1:]]

    def test_flat_sasaki_all_zero(self, capsys):
        code, out, _ = run_cli(
            capsys, "curvature", "--p", "0", "--q", "0", "--n", "3", "--c", "0",
            "--t-max", "4", "--samples", "20",
        )
        assert code == 0
        for row in self.header_and_rows(out):
            assert all(float(v) == 0.0 for v in row[1:])

    def test_zero_section_row(self, capsys):
        code, out, _ = run_cli(
            capsys, "curvature", "--p", "1", "--q", "1", "--n", "3", "--c", "0",
            "--t-max", "2", "--samples", "5",
        )
        rows = self.header_and_rows(out)
        assert float(rows[0][3]) == 3.0  # K_vv at the zero section is 2p+q
        assert float(rows[0][5]) == 18.0

    def test_ball_bundle_clip_and_boundary_value(self, capsys):
        code, out, err = run_cli(
            capsys, "curvature", "--p", "2", "--q", "-1", "--n", "3", "--c", "0",
            "--t-max", "5", "--samples", "400",
        )
        assert code == 0
        assert "clipped" in err
        rows = self.header_and_rows(out)
        assert abs(float(rows[-1][3]) - 4.0) < 1e-3  # K_vv (orthogonal) -> mu(2)

    def test_csv_output(self, tmp_path, capsys):
        path = tmp_path / "curv.csv"
        code, _, _ = run_cli(
            capsys, "curvature", "--p", "1", "--q", "1", "--n", "2", "--c", "1",
            "--csv", str(path),
        )
        assert code == 0 and path.read_text().startswith("t,")


class TestFindParamsCommand:
    def test_surface_route(self, capsys):
        code, out, _ = run_cli(capsys, "find-params", "--n", "2", "--c", "-1")
        assert code == 0
        payload = last_json(out)
        assert (payload["p"], payload["q"]) == (2.0, 0.0)
        assert payload["min_scalar_on_grid"] > 0

    def test_ball_bundle_route_flagged(self, capsys):
        code, out, _ = run_cli(capsys, "find-params", "--n", "3", "--c", "1")
        assert code == 0
        assert "ball-bundle metric: q < 0" in out
        payload = last_json(out)
        assert (payload["p"], payload["q"]) == (2.0, -1.0)

    def test_nonneg_route(self, capsys):
        code, out, _ = run_cli(capsys, "find-params", "--n", "3", "--c", "-1", "--nonneg-q")
        assert code == 0
        payload = last_json(out)
        assert payload["q"] >= 0
        assert all(v > 0 for v in payload["G_coefficients"])


class TestVerifyCommand:
    def test_identities_pass_exit_0(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "identities")
        assert code == 0
        for line in out.strip().splitlines():
            record = json.loads(line)
            assert record["status"] == "pass"
            assert set(record) >= {"name", "status", "max_err"}

    def test_forced_failure_exit_1(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "identities", "--tol-scale", "1e-30")
        assert code == 1
        assert any(json.loads(l)["status"] == "fail" for l in out.strip().splitlines())

    def test_deterministic_output(self, capsys):
        _, out1, _ = run_cli(capsys, "verify", "--suite", "identities", "--seed", "7")
        _, out2, _ = run_cli(capsys, "verify", "--suite", "identities", "--seed", "7")
        assert out1 == out2


def test_console_entry_point():
    exe = shutil.which("cgm")
    if exe is None:
        pytest.skip("console script not installed")
    proc = subprocess.run(
        [exe, "classify", "--p", "1", "--q", "1", "--n", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "in_gamma = True" in proc.stdout
