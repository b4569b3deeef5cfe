"""Unit tests for canonical JSON, manifests and console summaries."""

import hashlib
import io
import json
import os
from unittest.mock import patch

import numpy as np
import pytest

from src.pinchlab.reporting import (
    ConsoleReporter,
    build_manifest,
    canonical_json,
    created_at,
    emit,
)
from src.pinchlab.schemas import CheckResult, RegionProfile


class TestCanonicalJson:
    """Test deterministic JSON output."""

    def test_sorted_keys(self) -> None:
        """Test that keys come out sorted with a trailing newline."""
        text = canonical_json({"b": 1, "a": [2, 3]})
        assert text.index('"a"') < text.index('"b"')
        assert text.endswith("\n")

    def test_negative_zero(self) -> None:
        """Test that -0.0 is printed as 0.0."""
        assert json.loads(canonical_json({"x": -0.0})) == {"x": 0.0}
        assert "-0.0" not in canonical_json([-0.0])

    def test_numpy_values(self) -> None:
        """Test that numpy scalars and arrays become plain JSON."""
        document = {"n": np.int64(3), "ok": np.bool_(True), "v": np.array([0.5, 1.0])}
        assert json.loads(canonical_json(document)) == {"n": 3, "ok": True, "v": [0.5, 1.0]}

    def test_shortest_floats(self) -> None:
        """Test that floats keep their shortest round-trip form."""
        assert "0.1" in canonical_json({"x": 0.1})

    def test_precise_floats(self) -> None:
        """Test that precise output writes 17 significant digits as JSON numbers."""
        text = canonical_json({"x": 0.1, "z": -0.0, "n": 3, "s": "0.1"}, precise=True)
        assert '"x": 1.0000000000000001e-01' in text
        assert '"z": 0.0000000000000000e+00' in text
        assert json.loads(text) == {"x": 0.1, "z": 0.0, "n": 3, "s": "0.1"}

    def test_precise_sha_follows_the_output(self) -> None:
        """Test that the digest is taken over the precise result text."""
        stream = io.StringIO()
        emit({"x": 0.25}, None, stream, precise=True)
        out = json.loads(stream.getvalue())
        expected = canonical_json({"x": 0.25}, precise=True)
        assert out["sha256"] == hashlib.sha256(expected.encode()).hexdigest()

    @pytest.mark.parametrize("value", [float("nan"), float("inf"), np.float64("-inf")])
    def test_non_finite(self, value: float) -> None:
        """Test that non-finite floats are refused."""
        with pytest.raises(ValueError):
            canonical_json({"x": value})

    def test_same_input_same_bytes(self) -> None:
        """Test byte-identical output for equal documents built in different orders."""
        assert canonical_json({"a": 1, "b": 2}) == canonical_json({"b": 2, "a": 1})


class TestManifest:
    """Test run manifests."""

    def test_source_date_epoch(self) -> None:
        """Test that SOURCE_DATE_EPOCH pins the timestamp."""
        with patch.dict(os.environ, {"SOURCE_DATE_EPOCH": "0"}, clear=True):
            assert created_at() == "1970-01-01T00:00:00Z"

    def test_build_manifest(self) -> None:
        """Test the manifest fields."""
        with patch.dict(os.environ, {"SOURCE_DATE_EPOCH": "86400"}, clear=True):
            manifest = build_manifest(
                ["pinchlab", "gr", "enum"], RegionProfile(), {"root_tol": 1e-6}, 7
            )
        assert manifest.command == ["pinchlab", "gr", "enum"]
        assert manifest.seed == 7
        assert manifest.created_at == "1970-01-02T00:00:00Z"
        assert manifest.tolerances == {"root_tol": 1e-6}


class TestEmit:
    """Test the output document."""

    def test_hash_covers_result(self) -> None:
        """Test that sha256 is the hash of the canonical result."""
        stream = io.StringIO()
        emit({"count": 12}, None, stream)
        out = json.loads(stream.getvalue())
        expected = hashlib.sha256(canonical_json({"count": 12}).encode()).hexdigest()
        assert out["sha256"] == expected
        assert "manifest" not in out

    def test_manifest_does_not_change_hash(self) -> None:
        """Test that the manifest is outside the hashed part."""
        with patch.dict(os.environ, {"SOURCE_DATE_EPOCH": "0"}, clear=True):
            manifest = build_manifest(["pinchlab"], RegionProfile(), {})
        first, second = io.StringIO(), io.StringIO()
        emit({"count": 12}, manifest, first)
        emit({"count": 12}, None, second)
        a, b = json.loads(first.getvalue()), json.loads(second.getvalue())
        assert a["sha256"] == b["sha256"]
        assert a["manifest"]["created_at"] == "1970-01-01T00:00:00Z"


class TestConsoleReporter:
    """Test the stderr summary."""

    def test_all_passed(self) -> None:
        """Test the success line."""
        stream = io.StringIO()
        ConsoleReporter(stream).print_failures([CheckResult(name="a", passed=True)])
        assert "All 1 checks passed" in stream.getvalue()

    def test_failures(self) -> None:
        """Test that failed checks are listed with their details."""
        stream = io.StringIO()
        results = [
            CheckResult(name="gr2_circle", passed=False, details={"betti": [1, 0]}),
            CheckResult(name="oracles", passed=True),
        ]
        ConsoleReporter(stream).print_failures(results)
        text = stream.getvalue()
        assert "1 of 2 CHECKS FAILED" in text
        assert "gr2_circle" in text
        assert "betti: [1, 0]" in text
        assert "oracles" not in text
