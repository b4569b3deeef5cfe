"""The explicit family over RP^5 x B^(2g-2): regions, defining polynomials, genus map.

Parameters ``a = [a0:...:a5]`` are stored as unit vectors; every region test
and polynomial is evaluated in the a5 = 1 chart. Surfaces themselves are never
built: the genus of a member is read off the real roots of F_(a,b).
"""

import csv
import logging
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from itertools import product
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from .errors import (
    BoundaryError,
    DomainError,
    PreconditionError,
    ProfileTooLargeError,
    StructuralError,
)
from .schemas import RegionProfile
from .trigpoly import TWO_PI, TrigPoly, genus_of

logger = logging.getLogger(__name__)

BALL_SLACK = 1e-12
CHART_TOL = 1e-12


@dataclass(frozen=True)
class ParamPoint:
    """A point (a, b) of RP^5 x B^(2g-2)."""

    a: tuple[float, ...]
    b: tuple[float, ...]
    g: int

    @classmethod
    def create(cls, a: Sequence[float], b: Sequence[float], g: int) -> "ParamPoint":
        if g < 1:
            raise PreconditionError(f"genus parameter must be at least 1, got {g}")
        if len(a) != 6:
            raise StructuralError(f"a must have 6 homogeneous coordinates, got {len(a)}")
        if len(b) != 2 * g - 2:
            raise StructuralError(f"b must have {2 * g - 2} entries for g={g}, got {len(b)}")
        vec = np.asarray(a, dtype=float)
        length = float(np.linalg.norm(vec))
        if length == 0.0:
            raise PreconditionError("a = 0 is not a point of RP^5")
        vec = vec / length
        first = next(x for x in vec if x != 0.0)
        if first < 0:
            vec = -vec
        b_norm = math.hypot(*b) if b else 0.0
        if b_norm > 1.0 + BALL_SLACK:
            raise PreconditionError(f"b must lie in the closed unit ball, |b| = {b_norm}")
        return cls(tuple(float(x) + 0.0 for x in vec), tuple(float(x) for x in b), g)

    @classmethod
    def origin(cls, g: int, b: Sequence[float] | None = None) -> "ParamPoint":
        """O1 = [0:0:0:0:0:1]."""
        return cls.create([0, 0, 0, 0, 0, 1], b if b is not None else [0.0] * (2 * g - 2), g)

    def chart(self) -> tuple[float, ...] | None:
        """Coordinates with a5 = 1, or None off the chart."""
        a5 = self.a[5]
        if abs(a5) < CHART_TOL:
            return None
        return tuple(x / a5 for x in self.a)

    @property
    def b_norm(self) -> float:
        return math.hypot(*self.b) if self.b else 0.0


class Region(StrEnum):
    A_SING = "A_sing"
    A1 = "A1"
    A2 = "A2"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class RegionTag:
    kind: Region
    disc: tuple[float, float] | None = None
    distance: float | None = None

    @property
    def deformed(self) -> bool:
        return self.kind in (Region.A_SING, Region.A1)


def _disc_and_distance(chart: Sequence[float]) -> tuple[float, float, float]:
    a0, a1, a2, a3, a4, _ = chart
    return a1, a2, math.sqrt((a0 - a1 * a2) ** 2 + a3**2 + a4**2)


def classify(p: ParamPoint, profile: RegionProfile, tol: float = CHART_TOL) -> RegionTag:
    """Region of the parameter: A_sing inside A1, A2 a collar of width eps1 around A1."""
    chart = p.chart()
    if chart is None:
        return RegionTag(Region.OUTSIDE)
    a1, a2, d = _disc_and_distance(chart)
    r = a1 * a1 + a2 * a2
    if r >= 1.0:
        return RegionTag(Region.OUTSIDE, (a1, a2), d)
    eps1 = profile.eps1(r)
    if d <= tol:
        kind = Region.A_SING
    elif d <= eps1 * (1.0 + 1e-9):
        kind = Region.A1
    elif d <= 2.0 * eps1:
        kind = Region.A2
    else:
        kind = Region.OUTSIDE
    return RegionTag(kind, (a1, a2), d)


def build_F(p: ParamPoint, profile: RegionProfile) -> TrigPoly:
    """F_(a,b) = (a0 - a1a2) + sqrt(1-r)(a3 cos + a4 sin) + eps2 (eps1 - d) [bracket].

    The bracket is sum_k (b_k cos k + b'_k sin k) for k = 2..g plus
    (1 - |b|) cos (g+1).
    """
    tag = classify(p, profile)
    if not tag.deformed:
        raise DomainError(f"F is defined on A_sing and A1 only, got {tag.kind.value}")
    chart = p.chart()
    assert chart is not None
    a0, a1, a2, a3, a4, _ = chart
    r = a1 * a1 + a2 * a2
    d = tag.distance or 0.0
    weight = profile.eps2(r) * max(profile.eps1(r) - d, 0.0)
    root = math.sqrt(1.0 - r)
    cos = [root * a3] + [weight * x for x in p.b[0::2]] + [weight * (1.0 - p.b_norm)]
    sin = [root * a4] + [weight * x for x in p.b[1::2]] + [0.0]
    return TrigPoly(a0 - a1 * a2, tuple(cos), tuple(sin))


def genus_map(p: ParamPoint, profile: RegionProfile, tol: float | None = None) -> int:
    if not classify(p, profile).deformed:
        return 0
    return genus_of(build_F(p, profile), tol)


def normalize_T(p: ParamPoint, profile: RegionProfile) -> list[float]:
    """Coefficients of F divided by the cos (g+1) coefficient, which is dropped."""
    chart = p.chart()
    if chart is None or chart[1] != 0.0 or chart[2] != 0.0:
        raise DomainError("T is defined on the a1 = a2 = 0 chart")
    f = build_F(p, profile)
    lead = f.cos[-1]
    if lead <= 1e-15 * max(f.norm(), 1e-300):
        raise BoundaryError("leading cos (g+1) coefficient vanishes; T maps to the boundary")
    return [c / lead for c in f.to_coeffs()[:-2]]


def section_T(s: Sequence[float], profile: RegionProfile, g: int) -> ParamPoint:
    """The parameter mapped to s by normalize_T."""
    if len(s) != 2 * g + 1:
        raise StructuralError(f"T has {2 * g + 1} coordinates for g={g}, got {len(s)}")
    u = np.asarray(s[:3], dtype=float)
    v = np.asarray(s[3:], dtype=float)
    u_norm = float(np.linalg.norm(u))
    v_norm = float(np.linalg.norm(v))
    lam = profile.eps2(0.0) * profile.eps1(0.0) / (1.0 + v_norm + profile.eps2(0.0) * u_norm)
    b = v / (1.0 + v_norm)
    return ParamPoint.create([lam * u[0], 0.0, 0.0, lam * u[1], lam * u[2], 1.0], b.tolist(), g)


def b_names(g: int) -> list[str]:
    return [name for k in range(2, g + 1) for name in (f"b{k}", f"b{k}p")]


def b_grid(g: int, resolution: int) -> Iterator[tuple[float, ...]]:
    """Points of a cubic grid on [-1, 1]^(2g-2) that lie in the closed unit ball."""
    if resolution < 1:
        raise PreconditionError("grid resolution must be positive")
    axis = np.linspace(-1.0, 1.0, resolution) if resolution > 1 else np.array([0.0])
    for point in product(axis.tolist(), repeat=2 * g - 2):
        norm = math.hypot(*point) if point else 0.0
        if norm > 1.0 + BALL_SLACK:
            continue
        yield tuple(x / norm for x in point) if norm > 1.0 else point


@dataclass
class SweepRow:
    a: tuple[float, ...]
    b: tuple[float, ...]
    region: str
    genus: int

    def as_row(self) -> list[object]:
        return [*self.a, *self.b, self.region, self.genus]


def sweep(
    g: int,
    resolution: int,
    profile: RegionProfile,
    tol: float | None = None,
    a: Sequence[float] = (0, 0, 0, 0, 0, 1),
) -> list[SweepRow]:
    """Region and genus over a b-grid at a fixed a."""
    rows = []
    for b in b_grid(g, resolution):
        p = ParamPoint.create(a, b, g)
        rows.append(SweepRow(p.a, p.b, classify(p, profile).kind.value, genus_map(p, profile, tol)))
    logger.info(f"Swept {len(rows)} grid points for g={g}")
    return rows


def sweep_header(g: int) -> list[str]:
    return [f"a{i}" for i in range(6)] + b_names(g) + ["region", "genus"]


def write_sweep_csv(rows: Sequence[SweepRow], g: int, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(sweep_header(g))
        writer.writerows(row.as_row() for row in rows)


def sample_a2(rng: np.random.Generator, profile: RegionProfile) -> ParamPoint:
    """Random g = 1 parameter strictly inside A2, disc radius at most 0.9."""
    radius = 0.9 * math.sqrt(rng.uniform())
    theta = rng.uniform(0.0, TWO_PI)
    a1, a2 = radius * math.cos(theta), radius * math.sin(theta)
    r = a1 * a1 + a2 * a2
    d = profile.eps1(r) * (1.05 + 0.9 * rng.uniform())
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    a0, a3, a4 = (d * direction).tolist()
    return ParamPoint.create([a0 + a1 * a2, a1, a2, a3, a4, 1.0], [], 1)


def sample_outside(rng: np.random.Generator, g: int) -> ParamPoint:
    """Random parameter with a5 = 0 or disc radius above 1."""
    b = rng.normal(size=2 * g - 2)
    b *= rng.uniform() / max(float(np.linalg.norm(b)), 1.0)
    a = rng.normal(size=6)
    if rng.uniform() < 0.5:
        a[5] = 0.0
    else:
        a[5] = 1.0
        a[1:3] *= 1.5 / float(np.linalg.norm(a[1:3]))
    return ParamPoint.create(a.tolist(), b.tolist(), g)


@dataclass
class ProbeResult:
    """Fixed-point curve of the reduced critical equation and its sign pattern."""

    alpha: NDArray[np.float64] = field(repr=False)
    curve: NDArray[np.float64] = field(repr=False)
    values: NDArray[np.float64] = field(repr=False)
    sign_changes: int
    iterations: int
    c_fit: float
    c_bound: float

    @property
    def displacement_ok(self) -> bool:
        return self.c_fit <= self.c_bound * (1.0 + 1e-9)

    @property
    def passed(self) -> bool:
        return self.sign_changes <= 2 and self.displacement_ok

    def to_json(self, samples: int = 8) -> dict[str, object]:
        step = max(len(self.alpha) // samples, 1)
        return {
            "sign_changes": self.sign_changes,
            "iterations": self.iterations,
            "c_fit": self.c_fit,
            "c_bound": self.c_bound,
            "curve_sample": [
                [float(a), float(x), float(y)]
                for a, (x, y) in zip(self.alpha[::step], self.curve[::step], strict=True)
            ],
        }


def cyclic_sign_changes(values: NDArray[np.float64]) -> int:
    signs = np.sign(values[values != 0.0])
    if signs.size < 2:
        return 0
    return int(np.count_nonzero(signs != np.roll(signs, 1)))


def critical_curve_probe(
    p: ParamPoint,
    profile: RegionProfile,
    n_alpha: int = 4096,
    iters: int = 200,
    psi: float = 0.0,
) -> ProbeResult:
    """Solve the reduced critical equation in A2 by fixed-point iteration over an alpha grid.

    With x = (-a2 + y1, -a1 + y2), L = a3 cos + a4 sin and
    sigma(x) = (1 - psi) sqrt(1 - |x|^2) + psi sqrt(1 - r), the critical point
    y solves y = -J L grad sigma(x) with J the coordinate swap. The scalar
    f(alpha) = y1 y2 + (a0 - a1 a2) + sigma(x) L is sampled along the fixed
    points and its sign changes around the circle are counted.
    """
    tag = classify(p, profile)
    if tag.kind is not Region.A2:
        raise DomainError(f"the probe runs on A2 only, got {tag.kind.value}")
    chart = p.chart()
    assert chart is not None
    a0, a1, a2, a3, a4, _ = chart
    r = a1 * a1 + a2 * a2
    eta = profile.eta(r)
    rho = math.sqrt(r) + eta
    if rho >= 1.0:
        raise ProfileTooLargeError(
            f"eta({r:.3g}) = {eta} pushes the neighborhood past the unit disc"
        )

    alpha = np.linspace(0.0, TWO_PI, n_alpha, endpoint=False)
    lin = a3 * np.cos(alpha) + a4 * np.sin(alpha)
    base = np.array([-a2, -a1])

    def grad_sigma(y: NDArray[np.float64]) -> NDArray[np.float64]:
        x = base + y
        return -(1.0 - psi) * x / np.sqrt(1.0 - np.sum(x * x, axis=1))[:, None]

    y = np.zeros((n_alpha, 2))
    prev_step = math.inf
    for it in range(1, iters + 1):
        g_sigma = grad_sigma(y)
        new = -lin[:, None] * g_sigma[:, ::-1]
        step = float(np.max(np.linalg.norm(new - y, axis=1)))
        y = new
        if float(np.max(np.linalg.norm(y, axis=1))) > eta:
            raise ProfileTooLargeError("fixed-point iterate left the eta-neighborhood; shrink eps1")
        if step < 1e-10:
            break
        if step > prev_step and step > 1e-14:
            raise ProfileTooLargeError(f"iteration is not contracting at step {it}; shrink eps1")
        prev_step = step
    else:
        raise ProfileTooLargeError(f"no convergence within {iters} iterations; shrink eps1")

    x = base + y
    sigma = (1.0 - psi) * np.sqrt(1.0 - np.sum(x * x, axis=1)) + psi * math.sqrt(1.0 - r)
    values = y[:, 0] * y[:, 1] + (a0 - a1 * a2) + sigma * lin
    scale = abs(a3) + abs(a4)
    c_fit = float(np.max(np.linalg.norm(y, axis=1))) / scale if scale > 0 else 0.0
    result = ProbeResult(
        alpha=alpha,
        curve=x,
        values=values,
        sign_changes=cyclic_sign_changes(values),
        iterations=it,
        c_fit=c_fit,
        c_bound=rho / math.sqrt(1.0 - rho * rho),
    )
    if not result.passed:
        logger.warning(f"Probe at a={p.a} found {result.sign_changes} sign changes")
    return result


appendixB_probe = critical_curve_probe  # noqa: N816
