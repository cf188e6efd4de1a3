import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from admissible.cli import main
from admissible.configurations import character_direct
from admissible.series import TruncatedSeries

GOLDEN_DIR = Path(__file__).parent / "golden"
REGOLD = os.environ.get("REGOLD") == "1"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestChar:
    def test_direct_matches_library(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "char", "--method", "direct", "--k", "1", "--r", "2",
            "--b", "0", "--qmax", "8", "--zmax", "3",
        )
        assert code == 0
        got = TruncatedSeries.from_json(out)
        assert got == character_direct(1, 2, (0,), 8, 3)

    def test_trivial_constant(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "char", "--method", "direct", "--k", "2", "--r", "3",
            "--b", "1,2", "--qmax", "0", "--zmax", "0",
        )
        assert code == 0
        assert json.loads(out) == {"q_order": 0, "z_order": 0, "terms": [[0, 0, "1"]]}

    def test_fermionic_r2_z1_block(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "char", "--method", "fermionic-r2", "--k", "1", "--r", "2",
            "--b", "1", "--qmax", "5", "--zmax", "2",
        )
        assert code == 0
        s = TruncatedSeries.from_json(out)
        assert [s.z_block(1).coefficient(d) for d in range(6)] == [1] * 6

    def test_oracle_method_agrees_with_direct(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "char", "--method", "oracle", "--k", "2", "--r", "2",
            "--b", "1", "--qmax", "8", "--zmax", "3",
        )
        assert code == 0
        assert TruncatedSeries.from_json(out) == character_direct(2, 2, (1,), 8, 3)

    def test_invalid_b1_for_fermionic_r3(self, capsys):
        code, _, err = run_cli(
            capsys,
            "char", "--method", "fermionic-r3", "--k", "2", "--r", "3",
            "--b", "1,1", "--qmax", "4", "--zmax", "2",
        )
        assert code == 2
        assert "b1 = k" in err

    def test_missing_b_is_an_error(self, capsys):
        code, _, err = run_cli(
            capsys,
            "char", "--method", "direct", "--k", "1", "--r", "2",
            "--qmax", "4", "--zmax", "2",
        )
        assert code == 2
        assert "--b is required" in err

    def test_special_fills_in_b(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "char", "--method", "fermionic-r3-special", "--k", "3", "--r", "3",
            "--qmax", "6", "--zmax", "2",
        )
        assert code == 0
        TruncatedSeries.from_json(out)  # parses


class TestTable:
    def test_grid_a_k2(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--k", "2", "--which", "A")
        assert code == 0
        assert out == "2 2 0 1\n2 4 1 2\n0 1 2 2\n1 2 2 4\n"

    def test_json_a_k1(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--k", "1", "--which", "A", "--format", "json"
        )
        assert json.loads(out) == [[2, 1], [1, 2]]

    def test_json_b_k2(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--k", "2", "--which", "B", "--format", "json"
        )
        assert json.loads(out) == [[2, 3], [3, 6]]

    def test_csv_and_latex(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--k", "2", "--which", "A2", "--format", "csv"
        )
        assert out == "2,2\n2,4\n"
        code, out, _ = run_cli(
            capsys, "table", "--k", "1", "--which", "A", "--format", "latex"
        )
        assert "\\begin{array}{cc}" in out and "2 & 1" in out

    def test_c2_requires_b0(self, capsys):
        code, _, err = run_cli(capsys, "table", "--k", "2", "--which", "c2")
        assert code == 2 and "--b0" in err

    def test_c3_vector(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--k", "2", "--which", "c3", "--b0", "0",
            "--format", "json",
        )
        assert json.loads(out) == [1, 2, 0, 0]


class TestDims:
    def test_r2_dims_and_char(self, capsys):
        code, out, _ = run_cli(
            capsys, "dims", "--r", "2", "--k", "1", "--b0", "0", "--n", "2",
            "--cap", "8",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["dims"] == [0, 0, 0, 0, 1, 1, 2, 2, 3]
        got = TruncatedSeries.from_json_obj(payload["char"])
        assert got == character_direct(1, 2, (0,), 8, 2).z_block(2)

    def test_r3_pair_sectors(self, capsys):
        code, out, _ = run_cli(
            capsys, "dims", "--r", "3", "--k", "1", "--b0", "0", "--n", "1",
            "--cap", "4",
        )
        payload = json.loads(out)
        assert payload["b1"] == 1  # defaults to k
        assert [s["l2"] for s in payload["dims"]] == [0, 1]

    def test_r3_signed_variant(self, capsys):
        code, out, _ = run_cli(
            capsys, "dims", "--r", "3", "--variant", "signed", "--k", "2",
            "--b0", "1", "--n", "2", "--cap", "6",
        )
        payload = json.loads(out)
        got = TruncatedSeries.from_json_obj(payload["char"])
        assert got == character_direct(2, 3, (1, 2), 6, 2).z_block(2)

    def test_capacity_error_exit(self, capsys):
        code, _, err = run_cli(
            capsys, "dims", "--r", "2", "--k", "1", "--b0", "0", "--n", "9",
            "--cap", "4",
        )
        assert code == 2 and "exceeds" in err


class TestPairs:
    def test_family_output_shape(self, capsys):
        code, out, _ = run_cli(
            capsys, "pairs", "--family", "r3-odd-k", "--k", "1", "--order", "4"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["pairs"] == [
            {
                "a": "gamma1",
                "b": "gamma1",
                "z_power": "3",
                "closed_form": [2, 1],
                "series": ["1", "-1", "-1", "1", "0"],
            }
        ]

    def test_parity_mismatch_is_an_error(self, capsys):
        code, _, err = run_cli(
            capsys, "pairs", "--family", "r3-even-k", "--k", "3"
        )
        assert code == 2 and "even" in err


class TestVerify:
    def test_small_r2_suite_all_match(self, capsys):
        code, out, err = run_cli(
            capsys,
            "verify", "r2", "--kmax", "2", "--qmax", "10", "--zmax", "5",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["suite"] == "r2"
        assert len(payload["reports"]) == 5  # (k=1: 2 cases) + (k=2: 3 cases)
        assert all(r["status"] == "match" for r in payload["reports"])
        assert "match" in err  # human table goes to stderr

    def test_stdout_is_deterministic(self, capsys):
        _, out1, _ = run_cli(
            capsys, "verify", "special-equality", "--kmax", "2",
            "--qmax", "8", "--zmax", "4",
        )
        _, out2, _ = run_cli(
            capsys, "verify", "special-equality", "--kmax", "2",
            "--qmax", "8", "--zmax", "4",
        )
        assert out1 == out2

    def test_conjecture_suite_never_fails_exit(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "conjecture-10.2", "--nmax", "2")
        assert code == 0
        payload = json.loads(out)
        assert all(r["experimental"] for r in payload["reports"])

    def test_worker_pool_output_matches_serial(self):
        cmd = [
            sys.executable, "-m", "admissible.cli",
            "verify", "special-equality", "--kmax", "2", "--qmax", "8", "--zmax", "4",
        ]
        env = dict(os.environ)
        env["ADMISSIBLE_WORKERS"] = "1"
        serial = subprocess.run(cmd, capture_output=True, env=env, text=True)
        env["ADMISSIBLE_WORKERS"] = "3"
        pooled = subprocess.run(cmd, capture_output=True, env=env, text=True)
        assert serial.returncode == pooled.returncode == 0
        assert serial.stdout == pooled.stdout

    def test_mismatch_witness_is_replayable(self, capsys):
        # witness terms reference q/z exponents recomputable via cmd_char
        from admissible.series import first_mismatch

        a = TruncatedSeries({(2, 1): 3}, 5, 3)
        b = TruncatedSeries({(2, 1): 4}, 5, 3)
        assert first_mismatch(a, b) == (2, 1, 3, 4)

    def test_series_case_report_shape_on_mismatch(self):
        from admissible.cli import _series_case

        a = TruncatedSeries({(1, 0): 1}, 4, 2)
        b = TruncatedSeries({(1, 0): 2}, 4, 2)
        report, times = _series_case("demo", "m1", "m2", lambda: a, lambda: b)
        assert report["status"] == "mismatch"
        assert report["witness"] == {"q_exp": 1, "z_exp": 0, "lhs": "1", "rhs": "2"}
        assert set(times) == {"m1", "m2"}

    def test_reports_carry_case_params(self, capsys):
        _, out, _ = run_cli(
            capsys, "verify", "r2", "--kmax", "1", "--qmax", "6", "--zmax", "3"
        )
        payload = json.loads(out)
        assert payload["reports"][0]["params"]["qmax"] == 6


GOLDEN_CASES = {
    "char_direct_k1_r2_b0.json": [
        "char", "--method", "direct", "--k", "1", "--r", "2",
        "--b", "0", "--qmax", "8", "--zmax", "3",
    ],
    "char_direct_k3_r2_b2.json": [
        "char", "--method", "direct", "--k", "3", "--r", "2",
        "--b", "2", "--qmax", "12", "--zmax", "6",
    ],
    "char_fermionic_r2_k2_b1.json": [
        "char", "--method", "fermionic-r2", "--k", "2", "--r", "2",
        "--b", "1", "--qmax", "10", "--zmax", "4",
    ],
    "char_fermionic_r3_k2_b1.json": [
        "char", "--method", "fermionic-r3", "--k", "2", "--r", "3",
        "--b", "1,2", "--qmax", "10", "--zmax", "5",
    ],
    "char_special_k3.json": [
        "char", "--method", "fermionic-r3-special", "--k", "3", "--r", "3",
        "--qmax", "10", "--zmax", "5",
    ],
    "char_oracle_k2_r3_b02.json": [
        "char", "--method", "oracle", "--k", "2", "--r", "3",
        "--b", "0,2", "--qmax", "8", "--zmax", "3",
    ],
    "table_A_k3.json": ["table", "--k", "3", "--which", "A", "--format", "json"],
    "table_c2_k3_b1.json": [
        "table", "--k", "3", "--which", "c2", "--b0", "1", "--format", "json",
    ],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name, capsys):
    """Byte-for-byte regression against stored outputs.

    Regenerate with REGOLD=1 pytest tests/test_cli.py -k golden.
    """
    code, out, _ = run_cli(capsys, *GOLDEN_CASES[name])
    assert code == 0
    path = GOLDEN_DIR / name
    if REGOLD:
        GOLDEN_DIR.mkdir(exist_ok=True)
        path.write_text(out)
    assert path.read_text() == out
