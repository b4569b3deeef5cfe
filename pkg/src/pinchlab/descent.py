"""Discrete homology descent along pinch schedules.

The surviving subgroups b_in(t), b_out(t) start at f_map of the initial
diagram. Collapses intersect them with f_map of the new diagram; surgeries
intersect them with explicitly kept subgroups. A class that descends to zero
still counts as surviving.
"""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from typing import Literal

import numpy as np

from .errors import PinchlabError, PreconditionError, ScheduleError
from .gf2 import GF2Matrix, GF2Subspace, GF2Vector, parse_bits, restricted_form_rank
from .grassmann import GrPair, build_gr_range
from .homology import Z2Cycle, is_boundary
from .linkhom import (
    TWELVE_CYCLE_LABELS,
    HandleDiagram,
    arc_names,
    diagram_from_label,
    f_map,
    twelve_cycle,
)
from .poset import order_complex
from .schemas import PinchEvent

logger = logging.getLogger(__name__)

Side = Literal["in", "out"]


def _form_rank(b_in: GF2Subspace, b_out: GF2Subspace) -> int:
    return restricted_form_rank(GF2Matrix.identity(b_in.ambient_dim), b_in, b_out)


@dataclass
class DescentTrace:
    """State after each event; index 0 is the initial state."""

    initial: HandleDiagram
    schedule: list[PinchEvent]
    diagrams: list[HandleDiagram] = field(default_factory=list)
    b_in: list[GF2Subspace] = field(default_factory=list)
    b_out: list[GF2Subspace] = field(default_factory=list)
    genus: list[int] = field(default_factory=list)

    @property
    def final(self) -> tuple[GF2Subspace, GF2Subspace]:
        return self.b_in[-1], self.b_out[-1]

    def rank(self, t: int) -> int:
        return _form_rank(self.b_in[t], self.b_out[t])

    def to_json(self) -> dict[str, object]:
        return {
            "initial": self.initial.label(),
            "steps": [
                {
                    "t": t,
                    "diagram": self.diagrams[t].label(),
                    "b_in": self.b_in[t].label(),
                    "b_out": self.b_out[t].label(),
                    "genus": self.genus[t],
                    "rank": self.rank(t),
                }
                for t in range(len(self.diagrams))
            ],
        }


def _parse_keep(vectors: Sequence[str] | None, g: int, index: int) -> GF2Subspace:
    if vectors is None:
        return GF2Subspace.full(g)
    bits = []
    for text in vectors:
        if len(text) != g:
            raise ScheduleError(f"kept class {text!r} must have {g} bits", index)
        try:
            bits.append(parse_bits(text))
        except PinchlabError as e:
            raise ScheduleError(str(e), index) from e
    return GF2Subspace.span(bits, g)


class DescentRunner:
    """Applies pinch events one at a time to a diagram and its surviving subgroups."""

    def __init__(self, initial: HandleDiagram) -> None:
        image = f_map(initial)
        self.diagram = initial
        self.b_in = image.a_in
        self.b_out = image.a_out
        self.genus = initial.genus

    def apply(self, event: PinchEvent, index: int) -> None:
        g = self.diagram.g
        if event.kind in ("isotopy", "shrink"):
            return
        if event.kind == "collapse":
            if event.arc is None or event.arc not in arc_names(g):
                raise ScheduleError(f"collapse needs a valid arc, got {event.arc!r}", index)
            if event.arc in self.diagram.collapsed:
                raise ScheduleError(f"arc {event.arc} is already collapsed", index)
            if len(self.diagram.collapsed) + 1 == 2 * g + 2:
                raise ScheduleError("cannot collapse the last open arc", index)
            self.diagram = self.diagram.collapse(event.arc)
            image = f_map(self.diagram)
            self.b_in = self.b_in.intersection(image.a_in)
            self.b_out = self.b_out.intersection(image.a_out)
            self.genus = min(self.genus, self.diagram.genus)
            return
        # surgery
        if event.genus is not None and event.genus > self.genus:
            raise ScheduleError(
                f"surgery claims genus {event.genus} above the current {self.genus}", index
            )
        self.b_in = self.b_in.intersection(_parse_keep(event.keep_in, g, index))
        self.b_out = self.b_out.intersection(_parse_keep(event.keep_out, g, index))
        if event.genus is not None:
            self.genus = event.genus
        rank = _form_rank(self.b_in, self.b_out)
        if rank > self.genus:
            raise ScheduleError(f"surviving linking rank {rank} exceeds genus {self.genus}", index)


def run_descent(d0: HandleDiagram, schedule: Sequence[PinchEvent]) -> DescentTrace:
    runner = DescentRunner(d0)
    trace = DescentTrace(d0, list(schedule))

    def record() -> None:
        trace.diagrams.append(runner.diagram)
        trace.b_in.append(runner.b_in)
        trace.b_out.append(runner.b_out)
        trace.genus.append(runner.genus)

    record()
    for index, event in enumerate(schedule):
        runner.apply(event, index)
        record()
    logger.debug(f"Descent from {d0.label()} over {len(schedule)} events ends at {runner.genus}")
    return trace


def termination_time(trace: DescentTrace, c: GF2Vector, side: Side = "in") -> int | None:
    """First t with c outside b(t), or None if c survives every event."""
    track = trace.b_in if side == "in" else trace.b_out
    if c.n != track[0].ambient_dim:
        raise PreconditionError(f"class {c} has width {c.n}, expected {track[0].ambient_dim}")
    if not track[0].contains(c):
        raise PreconditionError(f"class {c} is not in the initial group")
    return next((t for t, b in enumerate(track) if not b.contains(c)), None)


def check_trace(trace: DescentTrace) -> list[str]:
    """Nestedness, genus monotonicity and the rank bound, as a list of violations."""
    violations = []
    for t in range(1, len(trace.diagrams)):
        if not trace.b_in[t] <= trace.b_in[t - 1] or not trace.b_out[t] <= trace.b_out[t - 1]:
            violations.append(f"t={t}: surviving subgroups are not nested")
        if trace.genus[t] > trace.genus[t - 1]:
            violations.append(f"t={t}: genus increased")
    for t in range(len(trace.diagrams)):
        rank = trace.rank(t)
        if rank > trace.genus[t]:
            violations.append(f"t={t}: rank {rank} exceeds genus {trace.genus[t]}")
        if trace.genus[t] > trace.diagrams[t].genus:
            violations.append(f"t={t}: genus above the diagram genus")
    return violations


def random_schedule(
    rng: np.random.Generator, diagram: HandleDiagram, length: int
) -> list[PinchEvent]:
    """Valid events: isotopies, shrinks, collapses of open arcs and rank-respecting surgeries."""
    runner = DescentRunner(diagram)
    events: list[PinchEvent] = []
    g = diagram.g
    for index in range(length):
        roll = rng.uniform()
        open_arcs = [a for a in arc_names(g) if a not in runner.diagram.collapsed]
        if roll < 0.15:
            event = PinchEvent(kind="isotopy")
        elif roll < 0.25:
            event = PinchEvent(kind="shrink", component="sphere")
        elif roll < 0.7 and len(open_arcs) > 1:
            event = PinchEvent(kind="collapse", arc=str(rng.choice(open_arcs)))
        else:
            keep_in = [format(int(x), f"0{g}b") for x in rng.integers(0, 1 << g, size=2)]
            keep_out = [format(int(x), f"0{g}b") for x in rng.integers(0, 1 << g, size=2)]
            claim = int(rng.integers(0, runner.genus + 1))
            b_in = runner.b_in.intersection(GF2Subspace.span(map(parse_bits, keep_in), g))
            b_out = runner.b_out.intersection(GF2Subspace.span(map(parse_bits, keep_out), g))
            claim = max(claim, _form_rank(b_in, b_out))
            event = PinchEvent(kind="surgery", keep_in=keep_in, keep_out=keep_out, genus=claim)
        runner.apply(event, index)
        events.append(event)
    return events


class Verdict(StrEnum):
    NO_FILLING = "NO_FILLING"
    CONTRADICTION = "CONTRADICTION"
    REJECTED = "REJECTED"


@dataclass
class ReplayResult:
    verdict: Verdict
    reason: str
    endpoints: dict[str, str] = field(default_factory=dict)
    stratum: str | None = None
    event: int | None = None

    def to_json(self) -> dict[str, object]:
        return {
            "verdict": self.verdict.value,
            "reason": self.reason,
            "endpoints": self.endpoints,
            "stratum": self.stratum,
            "event": self.event,
        }


def _edge_cycle_is_boundary(vertices: list[GrPair]) -> bool:
    gr = build_gr_range(2, 1, 1)
    complex_ = order_complex(gr.poset)
    edges = [
        (u, v)
        for u, v in zip(vertices, vertices[1:] + vertices[:1], strict=True)
        if u != v
    ]
    return is_boundary(complex_, Z2Cycle.from_simplices(complex_, edges))


def obstruction_replay(family_schedule: Mapping[str, Sequence[PinchEvent]]) -> ReplayResult:
    """Replay a deformation of the genus-2 twelve-cycle and judge whether it fills the cycle.

    Each stratum label (``"H1"``, ``"H1G1"``, ...) maps to the schedule run
    from that stratum; missing strata stay put. Every stratum must keep genus
    and linking rank at least 1 at all times. The endpoints must stay in
    Gr^2[1] with adjacent endpoints comparable; the endpoint cycle is then
    tested against the boundaries of Gr^2[1].
    """
    unknown = set(family_schedule) - set(TWELVE_CYCLE_LABELS)
    if unknown:
        return ReplayResult(Verdict.REJECTED, f"unknown strata {sorted(unknown)}")
    gr = build_gr_range(2, 1, 1)
    endpoints: list[GrPair] = []
    labels: dict[str, str] = {}
    for label in TWELVE_CYCLE_LABELS:
        schedule = list(family_schedule.get(label, ()))
        try:
            trace = run_descent(diagram_from_label(2, label), schedule)
        except ScheduleError as e:
            logger.warning(f"Stratum {label} rejected: {e}")
            return ReplayResult(Verdict.REJECTED, str(e), stratum=label, event=e.index)
        for t in range(len(trace.diagrams)):
            event = t - 1 if t else None
            if trace.genus[t] < 1:
                return ReplayResult(
                    Verdict.REJECTED, f"genus fell to {trace.genus[t]}", stratum=label, event=event
                )
            if trace.rank(t) < 1:
                return ReplayResult(
                    Verdict.REJECTED,
                    "linking rank fell below the genus floor of 1",
                    stratum=label,
                    event=event,
                )
        b_in, b_out = trace.final
        endpoint = GrPair(b_in, b_out, trace.rank(len(trace.diagrams) - 1))
        if endpoint not in gr.pairs:
            return ReplayResult(Verdict.REJECTED, "endpoint left Gr^2[1]", stratum=label)
        endpoints.append(endpoint)
        labels[label] = endpoint.label()

    for k, (u, v) in enumerate(zip(endpoints, endpoints[1:] + endpoints[:1], strict=True)):
        if not (u <= v or v <= u):
            return ReplayResult(
                Verdict.REJECTED,
                f"endpoints of {TWELVE_CYCLE_LABELS[k]} and its neighbor are incomparable",
                labels,
            )

    initial = [image.as_gr_pair() for image in twelve_cycle().images]
    initial_boundary = _edge_cycle_is_boundary(initial)
    if _edge_cycle_is_boundary(endpoints) and not initial_boundary:
        return ReplayResult(
            Verdict.CONTRADICTION,
            "endpoint cycle bounds although the initial cycle does not",
            labels,
        )
    return ReplayResult(Verdict.NO_FILLING, "endpoint cycle is not a boundary in Gr^2[1]", labels)
