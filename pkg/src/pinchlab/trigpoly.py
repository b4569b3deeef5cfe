"""Trigonometric polynomials and the structure of their complex roots.

Roots are found through the substitution z = exp(i*alpha): multiplying the
Laurent polynomial in z by z^deg gives an ordinary polynomial of degree
2*deg whose companion matrix eigenvalues map back to alpha = arg z - i log|z|.
Nearby roots are merged by single-linkage clustering on the cylinder
(R / 2piZ) x iR.
"""

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly
from numpy.typing import ArrayLike, NDArray
from scipy import linalg
from scipy.cluster.hierarchy import ClusterNode, linkage, to_tree
from scipy.spatial.distance import squareform

from .config import CONFIG
from .errors import CapacityError, DegreeDropError, PreconditionError, StructuralError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
MAX_DEGREE = 8
EPS = float(np.finfo(float).eps)
# An m-fold eigenvalue spreads over about eps^(1/m); groups are merged up to this
# multiple of that spread, and multiplicities above the cap get the capped allowance.
EIGEN_SPREAD_SLACK = 30.0
MAX_SPREAD_MULTIPLICITY = 4


def _wrap(x: NDArray[np.float64]) -> NDArray[np.float64]:
    """Representative of x mod 2pi in [-pi, pi)."""
    return np.mod(x + math.pi, TWO_PI) - math.pi


def _reduce(x: float) -> float:
    r = x % TWO_PI
    return 0.0 if r >= TWO_PI else r


def _angle_gap(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def _cluster_radius(m: int, tol: float, eigen_spread: bool) -> float:
    """Largest single-linkage height accepted for a group of m points."""
    if not eigen_spread or m < 2:
        return tol
    k = min(m, MAX_SPREAD_MULTIPLICITY)
    return max(tol, EIGEN_SPREAD_SLACK * EPS ** (1.0 / k))


def _flat_groups(node: ClusterNode, radius: Callable[[int], float]) -> list[list[int]]:
    """Largest subtrees whose merge height fits the radius for their size."""
    if node.is_leaf() or node.dist <= radius(node.get_count()):
        return [node.pre_order()]
    return _flat_groups(node.get_left(), radius) + _flat_groups(node.get_right(), radius)


@dataclass(frozen=True)
class RootCluster:
    value: complex
    multiplicity: int


@dataclass(frozen=True)
class RootConfig:
    """Multiset of points of (R / 2piZ) x iR, real parts reduced to [0, 2pi)."""

    clusters: tuple[RootCluster, ...]

    @classmethod
    def from_multiset(cls, pairs: Iterable[tuple[complex, int]]) -> "RootConfig":
        merged: dict[complex, int] = {}
        for value, mult in pairs:
            if mult < 1:
                raise PreconditionError("multiplicities must be positive")
            v = complex(value)
            key = complex(_reduce(v.real), v.imag)
            merged[key] = merged.get(key, 0) + mult
        clusters = (RootCluster(v, m) for v, m in merged.items())
        return cls(tuple(sorted(clusters, key=lambda c: (c.value.real, c.value.imag))))

    @classmethod
    def from_points(cls, points: ArrayLike, tol: float, eigen_spread: bool = False) -> "RootConfig":
        """Cluster points closer than tol; a cluster's multiplicity is its size.

        With ``eigen_spread`` the points are companion eigenvalues, and a group
        of m of them within the numerical spread of an m-fold root counts as one
        root of multiplicity m. Roots of multiplicity above
        ``MAX_SPREAD_MULTIPLICITY`` may still split.
        """
        pts = np.atleast_1d(np.asarray(points, dtype=complex))
        if pts.size == 0:
            return cls(())
        re = np.mod(pts.real, TWO_PI)
        im = pts.imag
        if pts.size == 1:
            return cls.from_multiset([(complex(re[0], im[0]), 1)])

        dx = np.abs(re[:, None] - re[None, :])
        dx = np.minimum(dx, TWO_PI - dx)
        dist = np.hypot(dx, im[:, None] - im[None, :])
        tree = to_tree(linkage(squareform(dist, checks=False), method="single"))
        groups = _flat_groups(tree, lambda m: _cluster_radius(m, tol, eigen_spread))
        pairs = []
        for group in groups:
            members = np.asarray(sorted(group))
            anchor = re[members[0]]
            mean_re = (anchor + float(np.mean(_wrap(re[members] - anchor)))) % TWO_PI
            pairs.append((complex(mean_re, float(np.mean(im[members]))), int(members.size)))
        return cls.from_multiset(pairs)

    @property
    def total_multiplicity(self) -> int:
        return sum(c.multiplicity for c in self.clusters)

    def points(self) -> list[complex]:
        return [c.value for c in self.clusters for _ in range(c.multiplicity)]

    def real_clusters(self, tol: float) -> list[RootCluster]:
        return [c for c in self.clusters if abs(c.value.imag) < tol]

    def to_json(self) -> list[dict[str, float | int]]:
        return [
            {"re": c.value.real, "im": c.value.imag, "multiplicity": c.multiplicity}
            for c in self.clusters
        ]


@dataclass(frozen=True)
class TrigPoly:
    """s0 + sum_k (cos[k-1] cos k*alpha + sin[k-1] sin k*alpha)."""

    s0: float
    cos: tuple[float, ...] = ()
    sin: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if len(self.cos) != len(self.sin):
            raise StructuralError("cosine and sine coefficient lists differ in length")
        if len(self.cos) > MAX_DEGREE:
            raise CapacityError(f"degree is capped at {MAX_DEGREE}, got {len(self.cos)}")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[float]) -> "TrigPoly":
        """Parse the array form [s0, s1, s1', s2, s2', ...]."""
        if len(coeffs) % 2 != 1:
            raise StructuralError("coefficient array must have odd length")
        values = [float(c) for c in coeffs]
        return cls(values[0], tuple(values[1::2]), tuple(values[2::2]))

    @classmethod
    def monic_cosine(cls, s: Sequence[float]) -> "TrigPoly":
        """f_s = s0 + ... + s'_(n-1) sin (n-1)alpha + cos n*alpha for len(s) = 2n - 1."""
        head = cls.from_coeffs(s)
        return cls(head.s0, head.cos + (1.0,), head.sin + (0.0,))

    @classmethod
    def from_roots(cls, cfg: RootConfig) -> "TrigPoly":
        """Real trigonometric polynomial with the given conjugate-symmetric roots.

        The z-polynomial is c * prod(z - exp(i*alpha_j)) with c = exp(-i*phi/2) / 2
        and phi the sum of the real parts, which makes the coefficients
        conjugate-reciprocal; the leading pair is then (cos phi/2, sin phi/2),
        normalized to a non-negative cosine part.
        """
        pts = np.asarray(cfg.points(), dtype=complex)
        if pts.size % 2:
            raise PreconditionError("a trigonometric polynomial has an even number of roots")
        d = pts.size // 2
        if d == 0:
            return cls(1.0)
        phi = float(np.sum(pts.real))
        p = 0.5 * np.exp(-0.5j * phi) * npoly.polyfromroots(np.exp(1j * pts))
        cos = tuple(float((p[d + k] + p[d - k]).real) for k in range(1, d + 1))
        sin = tuple(float((1j * (p[d + k] - p[d - k])).real) for k in range(1, d + 1))
        sign = -1.0 if cos[-1] < 0 else 1.0
        return cls(
            sign * float(p[d].real),
            tuple(sign * c for c in cos),
            tuple(sign * s for s in sin),
        )

    @property
    def deg(self) -> int:
        return len(self.cos)

    def to_coeffs(self) -> list[float]:
        out = [self.s0]
        for c, s in zip(self.cos, self.sin, strict=True):
            out.extend((c, s))
        return out

    def norm(self) -> float:
        return float(np.linalg.norm(self.to_coeffs()))

    def leading_norm(self) -> float:
        return math.hypot(self.cos[-1], self.sin[-1]) if self.deg else abs(self.s0)

    def scaled(self, factor: float) -> "TrigPoly":
        return TrigPoly(
            factor * self.s0,
            tuple(factor * c for c in self.cos),
            tuple(factor * s for s in self.sin),
        )

    def __call__(self, alpha: ArrayLike) -> NDArray[np.float64]:
        a = np.asarray(alpha, dtype=float)
        k = np.arange(1, self.deg + 1)
        angles = np.multiply.outer(a, k)
        cos, sin = np.asarray(self.cos), np.asarray(self.sin)
        return self.s0 + np.cos(angles) @ cos + np.sin(angles) @ sin

    def trimmed(self, tol: float | None = None) -> "TrigPoly":
        """Drop top-degree pairs that vanish relative to the coefficient norm."""
        tol = CONFIG["root_tol"] if tol is None else tol
        scale = self.norm()
        deg = self.deg
        while deg and math.hypot(self.cos[deg - 1], self.sin[deg - 1]) < tol * scale:
            deg -= 1
        return TrigPoly(self.s0, self.cos[:deg], self.sin[:deg])

    def z_coefficients(self) -> NDArray[np.complex128]:
        """Ascending coefficients of z^deg * f in z = exp(i*alpha)."""
        d = self.deg
        p = np.zeros(2 * d + 1, dtype=complex)
        p[d] = self.s0
        for k in range(1, d + 1):
            s, sp = self.cos[k - 1], self.sin[k - 1]
            p[d + k] = (s - 1j * sp) / 2
            p[d - k] = (s + 1j * sp) / 2
        return p


def roots(f: TrigPoly, tol: float | None = None) -> RootConfig:
    """All 2*deg complex roots of f, clustered into multiplicities."""
    tol = CONFIG["root_tol"] if tol is None else tol
    scale = f.norm()
    if scale == 0.0:
        raise DegreeDropError("the zero polynomial has no isolated roots")
    if f.deg == 0:
        return RootConfig(())
    if f.leading_norm() < tol * scale:
        raise DegreeDropError(
            f"leading coefficients ({f.cos[-1]}, {f.sin[-1]}) vanish relative to norm {scale}"
        )

    p = f.z_coefficients() / scale
    n = p.size - 1
    companion = np.eye(n, k=1, dtype=complex)
    companion[-1] = -p[:n] / p[n]
    z = linalg.eigvals(companion)
    alpha = np.angle(z) - 1j * np.log(np.abs(z))
    return RootConfig.from_points(alpha, tol, eigen_spread=True)


def n_odd(cfg: RootConfig, tol: float | None = None) -> int:
    """Number of real roots of odd multiplicity."""
    tol = CONFIG["root_tol"] if tol is None else tol
    return sum(1 for c in cfg.real_clusters(tol) if c.multiplicity % 2)


def genus_of(f: TrigPoly, tol: float | None = None) -> int:
    """Half the odd-multiplicity real root count minus one, clamped at zero."""
    g = f.trimmed(tol)
    if g.norm() == 0.0:
        logger.warning("genus_of called on the zero polynomial; reporting genus 0")
        return 0
    if g.deg == 0:
        return 0
    return max(n_odd(roots(g, tol), tol) // 2 - 1, 0)


def conjugate_pair_check(cfg: RootConfig, tol: float | None = None) -> bool:
    """True iff the multiset is invariant under complex conjugation within tol."""
    tol = CONFIG["root_tol"] if tol is None else tol
    upper = [c for c in cfg.clusters if c.value.imag >= tol]
    lower = [c for c in cfg.clusters if c.value.imag <= -tol]
    if sum(c.multiplicity for c in upper) != sum(c.multiplicity for c in lower):
        return False
    unused = list(lower)
    for c in upper:
        match = next(
            (
                m
                for m in unused
                if m.multiplicity == c.multiplicity
                and _angle_gap(m.value.real, c.value.real) < tol
                and abs(m.value.imag + c.value.imag) < tol
            ),
            None,
        )
        if match is None:
            return False
        unused.remove(match)
    return True


def root_sum_check(cfg: RootConfig, tol: float | None = None) -> bool:
    """True iff the roots sum to a multiple of 2pi with vanishing imaginary part."""
    tol = CONFIG["root_tol"] if tol is None else tol
    total = sum((c.value * c.multiplicity for c in cfg.clusters), start=0j)
    re_err = abs(total.real - TWO_PI * round(total.real / TWO_PI))
    im_scale = sum(abs(c.value.imag) * c.multiplicity for c in cfg.clusters)
    return re_err < tol * max(1.0, abs(total.real)) and abs(total.imag) < tol * max(1.0, im_scale)


def retract(cfg: RootConfig, t: float, tol: float | None = None) -> RootConfig:
    """Clamp imaginary parts to atan((1 - t) pi / 2), keeping real parts.

    At t = 1 every point is real and each conjugate pair lands as a double real point.
    """
    if not 0.0 <= t <= 1.0:
        raise PreconditionError(f"t must lie in [0, 1], got {t}")
    tol = CONFIG["root_tol"] if tol is None else tol
    cap = math.atan((1.0 - t) * math.pi / 2.0)
    pts = np.asarray(cfg.points(), dtype=complex)
    if pts.size == 0:
        return cfg
    im = np.sign(pts.imag) * np.minimum(np.abs(pts.imag), cap)
    return RootConfig.from_points(pts.real + 1j * im, tol)


def z_map(s: Sequence[float], tol: float | None = None) -> RootConfig:
    """Roots of the monic-cosine polynomial f_s."""
    return roots(TrigPoly.monic_cosine(s), tol)


def in_omega(s: Sequence[float], tol: float | None = None) -> bool:
    """True iff all roots of f_s are real."""
    tol = CONFIG["root_tol"] if tol is None else tol
    return all(abs(c.value.imag) < tol for c in z_map(s, tol).clusters)


def retract_coefficients(s: Sequence[float], t: float, tol: float | None = None) -> list[float]:
    """Pull the root retraction back to monic-cosine coefficients."""
    f = TrigPoly.from_roots(retract(z_map(s, tol), t, tol))
    lead = f.cos[-1]
    if abs(lead) < 0.5:
        raise PreconditionError("retracted roots do not sum to a multiple of 2pi")
    return [c / lead for c in f.to_coeffs()[:-2]]
