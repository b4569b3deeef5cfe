"""Configurations of points on the circle with angle sum in 2piZ, and their faces.

A configuration of n points is described by its n cyclic gaps, starting at
the smallest angle; gap i separates point i from point i + 1. A face of the
simplex is determined by the set of gaps that vanish.
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, MembershipError, PreconditionError, StructuralError
from .poset import FinitePoset, OrderComplex, order_complex
from .trigpoly import TWO_PI, RootConfig, n_odd

logger = logging.getLogger(__name__)

MAX_FACE_POINTS = 10
GAP_TOL = 1e-9


def _reduce(x: float) -> float:
    r = x % TWO_PI
    return 0.0 if r >= TWO_PI else r


@dataclass(frozen=True)
class SymConfig:
    """Sorted multiset of angles in [0, 2pi)."""

    angles: tuple[float, ...]

    @classmethod
    def of(cls, angles: Sequence[float]) -> "SymConfig":
        return cls(tuple(sorted(_reduce(float(a)) for a in angles)))

    @property
    def n(self) -> int:
        return len(self.angles)

    def angle_sum_defect(self) -> float:
        total = sum(self.angles)
        return abs(total - TWO_PI * round(total / TWO_PI))

    def to_root_config(self, tol: float = GAP_TOL) -> RootConfig:
        return RootConfig.from_points(np.asarray(self.angles, dtype=complex), tol)


@dataclass(frozen=True)
class FacePattern:
    """Cyclic gaps (r-coordinates) of a configuration, summing to 2pi."""

    gaps: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.gaps)

    def zero_set(self, tol: float = GAP_TOL) -> frozenset[int]:
        return frozenset(i for i, r in enumerate(self.gaps) if r < tol)

    def distinct_points(self, tol: float = GAP_TOL) -> int:
        return self.n - len(self.zero_set(tol))

    def cell_dimension(self, tol: float = GAP_TOL) -> int:
        return self.distinct_points(tol) - 1

    def multiplicities(self, tol: float = GAP_TOL) -> tuple[int, ...]:
        return tuple(len(run) for run in point_runs(self.n, self.zero_set(tol)))


@dataclass(frozen=True)
class FaceRecord:
    zero_set: frozenset[int]
    multiplicities: tuple[int, ...]
    genus: int
    dimension: int

    def to_json(self) -> dict[str, object]:
        return {
            "zero_set": sorted(self.zero_set),
            "multiplicities": list(self.multiplicities),
            "genus": self.genus,
            "dimension": self.dimension,
        }


def point_runs(n: int, zero_set: frozenset[int] | set[int]) -> list[frozenset[int]]:
    """Groups of points merged by the vanishing gaps, in cyclic order."""
    if len(zero_set) >= n:
        raise PreconditionError("at least one gap must stay open")
    start = next(i for i in range(n) if (i - 1) % n not in zero_set)
    runs: list[frozenset[int]] = []
    current: list[int] = []
    for step in range(n):
        p = (start + step) % n
        current.append(p)
        if p not in zero_set:
            runs.append(frozenset(current))
            current = []
    return runs


def to_simplex_coords(c: SymConfig, tol: float = GAP_TOL) -> FacePattern:
    """Consecutive gaps starting at the smallest angle."""
    if c.n == 0:
        raise PreconditionError("empty configuration")
    if c.angle_sum_defect() > tol * max(1, c.n):
        raise MembershipError(f"angle sum {sum(c.angles)} is not a multiple of 2pi")
    a = c.angles
    gaps = [a[i + 1] - a[i] for i in range(c.n - 1)] + [a[0] + TWO_PI - a[-1]]
    return FacePattern(tuple(max(0.0, r) for r in gaps))


def from_simplex_coords(p: FacePattern, tol: float = GAP_TOL) -> SymConfig:
    """Place s1 = 0, s_(k+1) = s_k + r_k, then subtract the mean."""
    if any(r < -tol for r in p.gaps):
        raise PreconditionError(f"negative gap in {p.gaps}")
    if abs(sum(p.gaps) - TWO_PI) > tol * max(1, p.n):
        raise PreconditionError(f"gaps sum to {sum(p.gaps)}, not 2pi")
    s = np.concatenate(([0.0], np.cumsum(np.maximum(p.gaps[:-1], 0.0))))
    return SymConfig.of((s - s.mean()).tolist())


def realize_face(n: int, zero_set: frozenset[int] | set[int]) -> FacePattern:
    """A point in the open cell of a zero-set: all open gaps equal."""
    if any(not 0 <= i < n for i in zero_set):
        raise StructuralError(f"gap index out of range for n={n}")
    open_gaps = n - len(zero_set)
    if open_gaps < 1:
        raise PreconditionError("at least one gap must stay open")
    width = TWO_PI / open_gaps
    return FacePattern(tuple(0.0 if i in zero_set else width for i in range(n)))


def _as_pattern(c: "SymConfig | FacePattern", tol: float) -> FacePattern:
    return c if isinstance(c, FacePattern) else to_simplex_coords(c, tol)


def face_leq(
    c0: SymConfig | FacePattern,
    c1: SymConfig | FacePattern,
    alignment: Sequence[int] | None = None,
    tol: float = GAP_TOL,
) -> bool:
    """c0 <= c1 iff every gap vanishing in c1 also vanishes in c0.

    ``alignment[i]`` is the gap of c0 that corresponds to gap i of c1; it must
    be a cyclic rotation. The default pairs gaps by index.
    """
    p0, p1 = _as_pattern(c0, tol), _as_pattern(c1, tol)
    n = p0.n
    if p1.n != n:
        raise StructuralError(f"configurations of {n} and {p1.n} points are not comparable")
    if alignment is None:
        alignment = range(n)
    if len(alignment) != n or not any(
        all(alignment[i] == (i + shift) % n for i in range(n)) for shift in range(n)
    ):
        raise StructuralError("alignment must be a cyclic rotation of the gaps")
    return {alignment[i] for i in p1.zero_set(tol)} <= p0.zero_set(tol)


def face_genus(n: int, zero_set: frozenset[int] | set[int], tol: float = GAP_TOL) -> int:
    """Genus of the merged configuration: half the odd-multiplicity points minus one."""
    cfg = from_simplex_coords(realize_face(n, zero_set)).to_root_config(tol)
    return max(n_odd(cfg, tol) // 2 - 1, 0)


def enumerate_faces(
    n: int,
    predicate: Callable[[FaceRecord], bool] | None = None,
    tol: float = GAP_TOL,
) -> list[FaceRecord]:
    """Every zero-set of the n cyclic gaps except all-zero, with multiplicities and genus."""
    if n < 2:
        raise PreconditionError("need at least two points")
    if n > MAX_FACE_POINTS:
        raise CapacityError(f"face enumeration is capped at n={MAX_FACE_POINTS}, got {n}")
    records = []
    for mask in range((1 << n) - 1):
        zero_set = frozenset(i for i in range(n) if mask >> i & 1)
        record = FaceRecord(
            zero_set=zero_set,
            multiplicities=tuple(len(run) for run in point_runs(n, zero_set)),
            genus=face_genus(n, zero_set, tol),
            dimension=n - len(zero_set) - 1,
        )
        if predicate is None or predicate(record):
            records.append(record)
    records.sort(key=lambda r: (len(r.zero_set), sorted(r.zero_set)))
    logger.debug(f"{len(records)} faces of the {n}-point configuration space kept")
    return records


def boundary_face_poset(g: int, min_genus: int = 1, tol: float = GAP_TOL) -> FinitePoset:
    """Proper faces of the 2g+2 point configuration space with genus >= min_genus.

    Elements are sorted zero-set tuples; a face lies below another when it
    closes more gaps.
    """
    faces = enumerate_faces(2 * g + 2, lambda r: bool(r.zero_set) and r.genus >= min_genus, tol)
    labels = [tuple(sorted(r.zero_set)) for r in faces]
    return FinitePoset.from_leq(labels, lambda x, y: set(y) <= set(x))


def face_complex(
    g: int, min_genus: int = 1, budget: int | None = None, tol: float = GAP_TOL
) -> OrderComplex:
    """Barycentric model of the genus >= min_genus boundary subcomplex."""
    return order_complex(boundary_face_poset(g, min_genus, tol), budget=budget)


__all__ = [
    "FacePattern",
    "FaceRecord",
    "SymConfig",
    "boundary_face_poset",
    "enumerate_faces",
    "face_complex",
    "face_genus",
    "face_leq",
    "from_simplex_coords",
    "point_runs",
    "realize_face",
    "to_simplex_coords",
]
