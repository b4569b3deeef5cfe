"""Pydantic schemas for the JSON documents pinchlab reads and writes."""

from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter


class RegionProfile(BaseModel):
    """Scales of the cut-off functions eta, eps1 and eps2 over r = a1^2 + a2^2."""

    model_config = ConfigDict(frozen=True)

    eta_scale: float = Field(default=0.05, gt=0)
    eps1_scale: float = Field(default=0.01, gt=0)
    eps2_const: float = Field(default=1e-3, gt=0)

    def eta(self, r: float) -> float:
        return self.eta_scale * max(0.0, 1.0 - r)

    def eps1(self, r: float) -> float:
        return self.eps1_scale * self.eta(r) ** 2

    def eps2(self, r: float) -> float:
        # constant in r
        return self.eps2_const


def load_profile(path: str | Path | None) -> RegionProfile:
    """Read a profile document, falling back to the defaults when no path is given."""
    if path is None:
        return RegionProfile()
    return RegionProfile.model_validate_json(Path(path).read_text())


class PinchEvent(BaseModel):
    """One event of a pinch schedule.

    Survivor subgroups of a surgery are given as spanning vectors, written as
    bit strings in the normalized bases (``"10"`` is the first basis class).
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["isotopy", "collapse", "surgery", "shrink"]
    arc: str | None = None
    keep_in: list[str] | None = None
    keep_out: list[str] | None = None
    genus: int | None = Field(default=None, ge=0)
    component: str | None = None


ScheduleAdapter = TypeAdapter(list[PinchEvent])
FamilyScheduleAdapter = TypeAdapter(dict[str, list[PinchEvent]])


def load_schedule(path: str | Path) -> list[PinchEvent]:
    """Parse a schedule file: a JSON list of events."""
    return ScheduleAdapter.validate_json(Path(path).read_text())


class RunManifest(BaseModel):
    """Everything needed to reproduce an output document."""

    command: list[str]
    profile: RegionProfile
    tolerances: dict[str, float]
    seed: int | None = None
    version: str
    created_at: str


class CheckResult(BaseModel):
    """Outcome of one acceptance check."""

    name: str
    passed: bool
    details: dict[str, Any] = Field(default_factory=dict)


class ErrorResponse(BaseModel):
    """Error response model."""

    error: str
    detail: str | None = None
    partial: dict[str, Any] | None = None
