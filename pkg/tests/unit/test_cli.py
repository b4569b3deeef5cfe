"""Unit tests for the pinchlab command line."""

import json
import re
from pathlib import Path
from typing import Any
from unittest.mock import patch

import pytest

from src.pinchlab.cli import build_parser, dispatch
from src.pinchlab.symprod import enumerate_faces


def run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, dict[str, Any]]:
    code = dispatch(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else {}


class TestParser:
    """Test argument parsing."""

    def test_global_options(self) -> None:
        """Test that --budget and --profile precede the command."""
        args = build_parser().parse_args(["--budget", "50", "gr", "enum", "--n", "2"])
        assert args.budget == 50
        assert args.profile is None
        assert args.n == 2

    def test_no_command(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that a bare invocation prints help and fails."""
        assert dispatch([]) == 2
        assert "usage" in capsys.readouterr().err

    def test_unknown_flag(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that argparse errors become exit code 2."""
        assert dispatch(["gr", "enum", "--n", "2", "--bogus"]) == 2


class TestGrCommands:
    """Test the gr subcommands."""

    def test_enum(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the five subspaces of Z2^2."""
        code, out = run(capsys, "gr", "enum", "--n", "2")
        assert code == 0
        assert out["result"]["count"] == 5
        assert len(out["result"]["subspaces"]) == 5
        assert out["manifest"]["command"][:2] == ["pinchlab", "gr"]

    def test_range_homology(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that Gr^2[1] is a circle."""
        code, out = run(capsys, "gr", "range", "--n", "2", "--lo", "1", "--hi", "1", "--homology")
        assert code == 0
        assert out["result"] == {"count": 12, "betti": [1, 1]}

    def test_hasse_file(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        """Test that the Hasse diagram is written next to the result."""
        target = tmp_path / "hasse.json"
        code, out = run(
            capsys, "gr", "range", "--n", "2", "--lo", "1", "--hi", "1", "--hasse", str(target)
        )
        assert code == 0
        assert out["result"]["hasse"] == str(target)
        assert target.exists()

    def test_capacity(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that oversize requests report a capacity error."""
        code, out = run(capsys, "gr", "enum", "--n", "7")
        assert code == 1
        assert out["error"] == "capacity_error"

    def test_range_cycles(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the cycle representatives of the twelve-gon Gr^2[1]."""
        code, out = run(capsys, "gr", "range", "--n", "2", "--lo", "1", "--hi", "1", "--cycles")
        assert code == 0
        assert out["result"]["betti"] == [1, 1]
        cycles = out["result"]["cycles"]
        assert sorted(cycles) == ["0", "1"]
        assert [len(z) for z in cycles["0"]] == [1]
        assert [len(z) for z in cycles["1"]] == [12]
        assert all(len(edge) == 2 for edge in cycles["1"][0])

    def test_range_face_list(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        """Test that the face list has one line per vertex and edge."""
        target = tmp_path / "faces.txt"
        code, out = run(
            capsys, "gr", "range", "--n", "2", "--lo", "1", "--hi", "1", "--face-list", str(target)
        )
        assert code == 0
        assert out["result"]["face_list"] == str(target)
        lines = target.read_text().splitlines()
        assert len(lines) == 24
        assert sum(len(line.split()) == 2 for line in lines) == 12

    def test_sha_is_stable(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that repeated runs hash the result identically."""
        _, first = run(capsys, "gr", "enum", "--n", "3")
        _, second = run(capsys, "gr", "enum", "--n", "3")
        assert first["sha256"] == second["sha256"]


class TestSymAndTrig:
    """Test the sym and trig subcommands."""

    def test_faces(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the thirteen genus >= 1 faces at g = 2."""
        code, out = run(capsys, "sym", "faces", "--g", "2", "--min-genus", "1")
        assert code == 0
        assert out["result"]["count"] == 13
        assert out["result"]["n"] == 6

    def test_faces_tolerance(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that --tol reaches the face enumeration."""
        with patch("src.pinchlab.cli.enumerate_faces", wraps=enumerate_faces) as spy:
            code, out = run(capsys, "sym", "faces", "--g", "2", "--min-genus", "1", "--tol", "1e-9")
        assert code == 0
        assert out["result"]["count"] == 13
        assert spy.call_args.args[2] == 1e-9

    def test_faces_homology(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that the face complex reports one Betti number per dimension."""
        code, out = run(capsys, "sym", "faces", "--g", "2", "--min-genus", "1", "--homology")
        assert code == 0
        assert len(out["result"]["betti"]) >= 1

    def test_genus(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the genus of cos 3 alpha."""
        code, out = run(capsys, "trig", "genus", "--coeffs", "[0,0,0,0,0,1,0]")
        assert code == 0
        assert out["result"] == {"genus": 2}

    def test_roots(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the root report of cos 3 alpha."""
        _, out = run(capsys, "trig", "roots", "--coeffs", "[0,0,0,0,0,1,0]")
        assert out["result"]["n_odd"] == 6
        assert out["result"]["conjugate_pairs"]

    def test_degree_drop(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that a vanishing top degree is reported."""
        code, out = run(capsys, "trig", "roots", "--coeffs", "[1,0,0]")
        assert code == 1
        assert out["error"] == "degree_drop"

    def test_bad_coeffs(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that malformed coefficients are an invalid argument."""
        code, out = run(capsys, "trig", "genus", "--coeffs", "{}")
        assert code == 2
        assert out["error"] == "invalid_argument"


class TestFamilyCommands:
    """Test the family subcommands."""

    def test_origin(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test genus 2 at the centre of the family."""
        code, out = run(capsys, "family", "genus", "--a", "0,0,0,0,0,1", "--b", "0,0", "--g", "2")
        assert code == 0
        assert out["result"]["genus"] == 2

    def test_sweep(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        """Test that the sweep writes its CSV and counts genera."""
        target = tmp_path / "sweep.csv"
        code, out = run(capsys, "family", "sweep", "--g", "2", "--grid", "3", "--out", str(target))
        assert code == 0
        assert out["result"]["rows"] == 5
        assert len(target.read_text().splitlines()) == 6

    def test_bad_numbers(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that non-numeric coordinates are refused."""
        code, out = run(capsys, "family", "genus", "--a", "x", "--g", "1")
        assert code == 2
        assert out["error"] == "invalid_argument"

    def test_missing_profile(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        """Test that a missing profile file is invalid input."""
        missing = str(tmp_path / "nope.json")
        code, out = run(
            capsys, "--profile", missing, "family", "genus", "--a", "0,0,0,0,0,1", "--g", "1"
        )
        assert code == 2
        assert out["error"] == "invalid_input"


class TestFmapAndDescent:
    """Test the fmap and descent subcommands."""

    def test_cycle12(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the twelve-cycle certificate."""
        code, out = run(capsys, "fmap", "cycle12", "--check")
        assert code == 0
        assert out["result"]["passed"]

    def test_compat(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test order compatibility at g = 1."""
        code, out = run(capsys, "fmap", "compat", "--g", "1")
        assert code == 0
        assert out["result"]["pairs_checked"] == 15 * 15

    def test_descent_run(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        """Test a one-event schedule."""
        schedule = tmp_path / "schedule.json"
        schedule.write_text(json.dumps([{"kind": "collapse", "arc": "H1"}]))
        code, out = run(capsys, "descent", "run", "--schedule", str(schedule))
        assert code == 0
        steps = out["result"]["steps"]
        assert len(steps) == 2
        assert steps[-1]["genus"] == 1
        assert steps[-1]["rank"] == 1

    def test_descent_error(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        """Test that an invalid event is reported with its index."""
        schedule = tmp_path / "schedule.json"
        schedule.write_text(json.dumps([{"kind": "isotopy"}, {"kind": "collapse", "arc": "H9"}]))
        code, out = run(capsys, "descent", "run", "--schedule", str(schedule))
        assert code == 1
        assert out["error"] == "schedule_error"
        assert out["detail"].startswith("event 1:")

    def test_invalid_schedule(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        """Test that a schedule with an unknown event kind is invalid input."""
        schedule = tmp_path / "schedule.json"
        schedule.write_text(json.dumps([{"kind": "teleport"}]))
        code, out = run(capsys, "descent", "run", "--schedule", str(schedule))
        assert code == 2
        assert out["error"] == "invalid_input"

    def test_missing_schedule(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        """Test that a missing schedule file is invalid input."""
        code, out = run(capsys, "descent", "run", "--schedule", str(tmp_path / "none.json"))
        assert code == 2
        assert out["error"] == "invalid_input"

    def test_replay(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        """Test that the empty deformation cannot fill the twelve-cycle."""
        family = tmp_path / "family.json"
        family.write_text("{}")
        code, out = run(capsys, "descent", "replay", "--schedule", str(family))
        assert code == 0
        assert out["result"]["verdict"] == "NO_FILLING"


class TestExitCodes:
    """Test the mapping of outcomes to exit codes."""

    @pytest.mark.parametrize(
        ("argv", "expected", "error"),
        [
            (["gr", "enum", "--n", "2"], 0, None),
            (["gr", "enum", "--n", "7"], 1, "capacity_error"),
            (["trig", "roots", "--coeffs", "[1,0,0]"], 1, "degree_drop"),
            (["gr", "enum", "--n", "0"], 2, "precondition_error"),
            (["trig", "genus", "--coeffs", '["a"]'], 2, "invalid_argument"),
            (["gr", "enum"], 2, None),
        ],
    )
    def test_exit_code(
        self,
        capsys: pytest.CaptureFixture[str],
        argv: list[str],
        expected: int,
        error: str | None,
    ) -> None:
        """Test 0 for success, 1 for runtime failures and 2 for bad input."""
        code, out = run(capsys, *argv)
        assert code == expected
        if error is not None:
            assert out["error"] == error

    def test_capacity_keeps_partial_counts(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that a budget overrun exits 1 and still reports its partial counts."""
        argv = ["--budget", "5", "gr", "range", "--n", "2", "--lo", "1", "--hi", "1", "--homology"]
        code, out = run(capsys, *argv)
        assert code == 1
        assert out["error"] == "capacity_error"
        assert out["partial"]["budget"] == 5


class TestCriticalCurveCommand:
    """Test the seeded sign-change survey on A2."""

    @pytest.mark.parametrize("name", ["appendix-b", "critical-curve"])
    def test_command_names(self, capsys: pytest.CaptureFixture[str], name: str) -> None:
        """Test that the survey runs under its name and its alias."""
        code, out = run(capsys, "probe", name, "--samples", "3", "--seed", "0")
        assert code in (0, 1)
        assert out["result"]["samples"] == 3
        assert (code == 1) == bool(out["result"]["failures"])


class TestPreciseOutput:
    """Test the 17 significant digit float format."""

    def test_precise_floats(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that --precise writes floats in exponent form with 16 decimals."""
        code = dispatch(["--precise", "trig", "roots", "--coeffs", "[0,0,0,0,0,1,0]"])
        text = capsys.readouterr().out
        assert code == 0
        assert re.search(r"\d\.\d{16}e[-+]\d\d", text)
        assert json.loads(text)["result"]["n_odd"] == 6
