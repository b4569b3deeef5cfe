"""Run manifests, canonical JSON output and console summaries."""

import hashlib
import json
import math
import os
import re
import sys
from collections.abc import Mapping, Sequence
from datetime import datetime, timezone

try:
    from datetime import UTC
except ImportError:  # Python < 3.11
    UTC = timezone.utc
from typing import Any, TextIO

import numpy as np
from pydantic import BaseModel

from . import __version__
from .schemas import CheckResult, RegionProfile, RunManifest

# Floats rendered to 17 significant digits travel through json.dumps as marked strings.
_MARK = "\x00"
_MARKED_FLOAT = re.compile(r'"\\u0000([-+.e0-9]+)\\u0000"')


def _normalize(value: Any, precise: bool = False) -> Any:
    """Plain JSON types only: numpy scalars unwrapped, -0.0 folded to 0.0."""
    if isinstance(value, BaseModel):
        return _normalize(value.model_dump(mode="json"), precise)
    if isinstance(value, Mapping):
        return {str(k): _normalize(v, precise) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_normalize(v, precise) for v in value]
    if isinstance(value, np.ndarray):
        return _normalize(value.tolist(), precise)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if not math.isfinite(x):
            raise ValueError(f"non-finite float {x} cannot be emitted")
        x += 0.0
        return f"{_MARK}{x:.16e}{_MARK}" if precise else x
    return value


def canonical_json(document: Any, precise: bool = False) -> str:
    """Sorted keys, two-space indent.

    Floats are written as their shortest round-trip repr, or with 17
    significant digits when ``precise`` is set.
    """
    text = json.dumps(_normalize(document, precise), sort_keys=True, indent=2, allow_nan=False)
    if precise:
        text = _MARKED_FLOAT.sub(r"\1", text)
    return text + "\n"


def created_at() -> str:
    """UTC timestamp, pinned by SOURCE_DATE_EPOCH when set."""
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    moment = datetime.fromtimestamp(int(epoch), UTC) if epoch else datetime.now(UTC)
    return moment.strftime("%Y-%m-%dT%H:%M:%SZ")


def build_manifest(
    argv: Sequence[str],
    profile: RegionProfile,
    tolerances: Mapping[str, float],
    seed: int | None = None,
) -> RunManifest:
    return RunManifest(
        command=list(argv),
        profile=profile,
        tolerances=dict(tolerances),
        seed=seed,
        version=__version__,
        created_at=created_at(),
    )


def emit(
    document: Mapping[str, Any],
    manifest: RunManifest | None,
    stream: TextIO,
    precise: bool = False,
) -> str:
    """Write the document with its manifest and the sha256 of the result part."""
    result = _normalize(document)
    out: dict[str, Any] = {
        "result": result,
        "sha256": hashlib.sha256(canonical_json(result, precise).encode()).hexdigest(),
    }
    if manifest is not None:
        out["manifest"] = _normalize(manifest)
    text = canonical_json(out, precise)
    stream.write(text)
    return text


class ConsoleReporter:
    """Human-readable summaries on stderr; stdout is reserved for JSON."""

    def __init__(self, stream: TextIO | None = None) -> None:
        self.stream = stream if stream is not None else sys.stderr

    def print_failures(self, results: Sequence[CheckResult]) -> None:
        failed = [r for r in results if not r.passed]
        if not failed:
            print(f"✅ All {len(results)} checks passed", file=self.stream)
            return
        print("\n" + "=" * 50, file=self.stream)
        print(f"❌ {len(failed)} of {len(results)} CHECKS FAILED", file=self.stream)
        print("=" * 50, file=self.stream)
        for result in failed:
            print(f"🔍 {result.name}", file=self.stream)
            for key, value in sorted(result.details.items()):
                print(f"   {key}: {value}", file=self.stream)
            print(file=self.stream)
