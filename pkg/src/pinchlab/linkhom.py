"""Handle/gap diagrams and the embedding of complement homology into Gr^g.

The 2g + 2 arcs of the genus-g configuration alternate handles H_1..H_(g+1)
and gaps G_1..G_(g+1) around a circle: H_i sits at position 2i - 2 and G_j at
2j - 1. Collapsing an arc closes the matching gap of the configuration of
2g + 2 points. The inner loop a_i runs through handles i and i + 1 and the
outer loop b_j through gaps j and j + 1; the last loop of each side is the sum
of the others.
"""

import logging
from dataclasses import dataclass, field
from functools import cache
from itertools import combinations
from typing import cast

from .errors import PreconditionError, StructuralError, UnknownElementError
from .gf2 import GF2Matrix, GF2Subspace, GF2Vector, restricted_form_rank
from .grassmann import GrPair, build_gr_range
from .homology import Z2Cycle, betti_numbers, is_boundary
from .poset import FinitePoset, order_complex
from .symprod import boundary_face_poset, face_genus

logger = logging.getLogger(__name__)

MAX_CHECK_GENUS = 3


def arc_names(g: int) -> list[str]:
    """Arcs in cyclic order: H1, G1, H2, G2, ..."""
    return [f"{kind}{i}" for i in range(1, g + 2) for kind in ("H", "G")]


def arc_position(name: str, g: int) -> int:
    try:
        return arc_names(g).index(name)
    except ValueError as e:
        raise UnknownElementError(f"unknown arc {name!r} for g={g}") from e


@dataclass(frozen=True)
class HandleDiagram:
    """The genus-g configuration with some arcs collapsed."""

    g: int
    collapsed: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.g < 1:
            raise PreconditionError(f"g must be at least 1, got {self.g}")
        names = set(arc_names(self.g))
        unknown = self.collapsed - names
        if unknown:
            raise UnknownElementError(f"unknown arcs {sorted(unknown)} for g={self.g}")
        if self.collapsed == names:
            raise StructuralError("collapsing every arc leaves no configuration")

    @property
    def n_arcs(self) -> int:
        return 2 * self.g + 2

    @property
    def zero_set(self) -> frozenset[int]:
        return frozenset(arc_position(a, self.g) for a in self.collapsed)

    @property
    def genus(self) -> int:
        return _diagram_genus(self.g, self.zero_set)

    def surviving_handles(self) -> list[int]:
        return [i for i in range(1, self.g + 2) if f"H{i}" not in self.collapsed]

    def surviving_gaps(self) -> list[int]:
        return [j for j in range(1, self.g + 2) if f"G{j}" not in self.collapsed]

    def collapse(self, arc: str) -> "HandleDiagram":
        arc_position(arc, self.g)
        if arc in self.collapsed:
            raise PreconditionError(f"arc {arc} is already collapsed")
        return HandleDiagram(self.g, self.collapsed | {arc})

    def __le__(self, other: object) -> bool:
        if not isinstance(other, HandleDiagram):
            return NotImplemented
        return self.g == other.g and self.collapsed >= other.collapsed

    def label(self) -> str:
        """Collapsed arcs in cyclic order, or ``"top"`` for the open cell."""
        return "".join(a for a in arc_names(self.g) if a in self.collapsed) or "top"


def _split_label(text: str) -> list[str]:
    out: list[str] = []
    for ch in text:
        if ch in "HG":
            out.append(ch)
        elif ch.isdigit() and out:
            out[-1] += ch
        else:
            raise StructuralError(f"cannot parse arc label {text!r}")
    return out


def diagram_from_label(g: int, label: str) -> HandleDiagram:
    """Parse ``"H1G1"`` (or ``"top"``) into a diagram."""
    if label == "top":
        return HandleDiagram(g)
    arcs = _split_label(label)
    for arc in arcs:
        arc_position(arc, g)
    return HandleDiagram(g, frozenset(arcs))


@cache
def _diagram_genus(g: int, zero_set: frozenset[int]) -> int:
    return face_genus(2 * g + 2, zero_set)


@dataclass(frozen=True)
class LoopModel:
    """Inner and outer loops with their feet and raw coordinates in Z2^g."""

    g: int
    inner: dict[str, GF2Vector]
    outer: dict[str, GF2Vector]
    feet: dict[str, tuple[str, str]]
    relations: list[list[str]]


def _loop_vector(i: int, g: int) -> GF2Vector:
    if i <= g:
        return GF2Vector.unit(i - 1, g)
    return GF2Vector((1 << g) - 1, g)


def generators(g: int) -> LoopModel:
    if g < 1:
        raise PreconditionError(f"g must be at least 1, got {g}")
    nxt = [i % (g + 1) + 1 for i in range(1, g + 2)]
    inner = {f"a{i}": _loop_vector(i, g) for i in range(1, g + 2)}
    outer = {f"b{j}": _loop_vector(j, g) for j in range(1, g + 2)}
    feet = {f"a{i}": (f"H{i}", f"H{nxt[i - 1]}") for i in range(1, g + 2)}
    feet.update({f"b{j}": (f"G{j}", f"G{nxt[j - 1]}") for j in range(1, g + 2)})
    return LoopModel(g, inner, outer, feet, [list(inner), list(outer)])


def _interleave(p: tuple[int, int], q: tuple[int, int]) -> bool:
    lo, hi = sorted(p)
    return ((lo < q[0] < hi) + (lo < q[1] < hi)) % 2 == 1


def raw_linking_matrix(g: int) -> GF2Matrix:
    """Entry (i, j) is 1 iff the feet of a_i and b_j interleave on the circle."""
    model = generators(g)
    entries = []
    for i in range(1, g + 2):
        h1, h2 = model.feet[f"a{i}"]
        a_feet = (arc_position(h1, g), arc_position(h2, g))
        row = []
        for j in range(1, g + 2):
            g1, g2 = model.feet[f"b{j}"]
            row.append(int(_interleave(a_feet, (arc_position(g1, g), arc_position(g2, g)))))
        entries.append(row)
    return GF2Matrix.from_lists(entries)


@cache
def linking_matrix(g: int) -> GF2Matrix:
    """Raw linking form on the bases a_1..a_g and b_1..b_g."""
    raw = raw_linking_matrix(g).to_lists()
    return GF2Matrix.from_lists([row[:g] for row in raw[:g]])


@dataclass(frozen=True)
class NormalizedBasis:
    """Basis changes P (inner) and Q (outer) with P^T M Q = I."""

    p: GF2Matrix
    q: GF2Matrix
    to_inner: GF2Matrix

    def check(self, raw: GF2Matrix) -> bool:
        return self.p.transpose() @ raw @ self.q == GF2Matrix.identity(raw.width)


@cache
def normalized_basis(g: int) -> NormalizedBasis:
    """P = (M^-1)^T, Q = I; inner coordinates convert by M^T."""
    m = linking_matrix(g)
    basis = NormalizedBasis(m.inverse().transpose(), GF2Matrix.identity(g), m.transpose())
    logger.debug(f"Normalized basis for g={g}: P={basis.p.to_lists()}")
    return basis


@dataclass(frozen=True)
class SubgroupPair:
    a_in: GF2Subspace
    a_out: GF2Subspace

    @property
    def form_rank(self) -> int:
        identity = GF2Matrix.identity(self.a_in.ambient_dim)
        return restricted_form_rank(identity, self.a_in, self.a_out)

    def as_gr_pair(self) -> GrPair:
        return GrPair(self.a_in, self.a_out, self.form_rank)

    def __le__(self, other: "SubgroupPair") -> bool:
        return self.a_in <= other.a_in and self.a_out <= other.a_out

    def label(self) -> str:
        return f"({self.a_in.label()}, {self.a_out.label()})"

    def to_json(self) -> dict[str, object]:
        return {
            "in": self.a_in.label(),
            "out": self.a_out.label(),
            "dims": [self.a_in.dim, self.a_out.dim],
            "rank": self.form_rank,
        }


def _path_span(survivors: list[int], g: int) -> list[int]:
    vectors = []
    for i, j in combinations(survivors, 2):
        x = 0
        for k in range(i, j):
            x ^= _loop_vector(k, g).bits
        vectors.append(x)
    return vectors


@cache
def f_map(d: HandleDiagram) -> SubgroupPair:
    """Spans of path classes between surviving handles and between surviving gaps."""
    g = d.g
    to_inner = normalized_basis(g).to_inner
    inner = [to_inner.apply(x) for x in _path_span(d.surviving_handles(), g)]
    outer = _path_span(d.surviving_gaps(), g)
    return SubgroupPair(GF2Subspace.span(inner, g), GF2Subspace.span(outer, g))


def all_diagrams(g: int) -> list[HandleDiagram]:
    """Every diagram except the all-collapsed one, by number of collapsed arcs."""
    names = arc_names(g)
    out = []
    for k in range(len(names)):
        for arcs in combinations(names, k):
            out.append(HandleDiagram(g, frozenset(arcs)))
    return out


TWELVE_CYCLE_LABELS = (
    "H1", "H1G1", "G1", "G1H2", "H2", "H2G2",
    "G2", "G2H3", "H3", "H3G3", "G3", "G3H1",
)


@dataclass(frozen=True)
class TwelveCycle:
    """The single and adjacent double pinchings of the genus-2 configuration, in cyclic order."""

    diagrams: tuple[HandleDiagram, ...]
    images: tuple[SubgroupPair, ...]

    def edge_cycle(self) -> list[tuple[GrPair, GrPair]]:
        pairs = [image.as_gr_pair() for image in self.images]
        return [(pairs[k], pairs[(k + 1) % len(pairs)]) for k in range(len(pairs))]

    def certificate(self) -> dict[str, object]:
        gr = build_gr_range(2, 1, 1)
        pairs = [image.as_gr_pair() for image in self.images]
        distinct = len(set(pairs)) == len(pairs)
        exhaustive = set(pairs) == set(gr.pairs)
        arrows = all(
            self.images[k] <= self.images[k - 1] and self.images[k] <= self.images[(k + 1) % 12]
            for k in range(1, 12, 2)
        )
        complex_ = order_complex(gr.poset)
        cycle = Z2Cycle.from_simplices(complex_, self.edge_cycle())
        nontrivial = not is_boundary(complex_, cycle)
        return {
            "distinct": distinct,
            "exhausts_gr2_1": exhaustive,
            "arrows": arrows,
            "cycle_nontrivial": nontrivial,
            "passed": distinct and exhaustive and arrows and nontrivial,
            "strata": [
                {"stratum": d.label(), **image.to_json()}
                for d, image in zip(self.diagrams, self.images, strict=True)
            ],
        }


def twelve_cycle() -> TwelveCycle:
    diagrams = tuple(diagram_from_label(2, label) for label in TWELVE_CYCLE_LABELS)
    return TwelveCycle(diagrams, tuple(f_map(d) for d in diagrams))


@dataclass
class CompatReport:
    g: int
    pairs_checked: int = 0
    counterexamples: list[dict[str, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def order_compatibility_check(g: int) -> CompatReport:
    """Monotonicity of f_map on all diagrams, and its converse on genus >= 1 diagrams."""
    if not 1 <= g <= MAX_CHECK_GENUS:
        raise PreconditionError(f"exhaustive checks run for 1 <= g <= {MAX_CHECK_GENUS}")
    report = CompatReport(g)
    diagrams = all_diagrams(g)
    images = {d: f_map(d) for d in diagrams}
    for d in diagrams:
        for e in diagrams:
            report.pairs_checked += 1
            below = d <= e
            if below and not images[d] <= images[e]:
                report.counterexamples.append(
                    {"kind": "monotonicity", "lower": d.label(), "upper": e.label()}
                )
            elif not below and d.genus >= 1 and e.genus >= 1 and images[d] <= images[e]:
                report.counterexamples.append(
                    {"kind": "converse", "lower": d.label(), "upper": e.label()}
                )
    if report.counterexamples:
        logger.warning(f"{len(report.counterexamples)} order compatibility failures at g={g}")
    return report


def rank_genus_violations(g: int) -> list[dict[str, object]]:
    """Diagrams whose image form rank differs from their genus."""
    if not 1 <= g <= MAX_CHECK_GENUS:
        raise PreconditionError(f"exhaustive checks run for 1 <= g <= {MAX_CHECK_GENUS}")
    return [
        {"diagram": d.label(), "genus": d.genus, "rank": f_map(d).form_rank}
        for d in all_diagrams(g)
        if f_map(d).form_rank != d.genus
    ]


@dataclass(frozen=True)
class HomologyComparison:
    g: int
    face_betti: list[int]
    image_betti: list[int]
    n_faces: int
    n_images: int

    @property
    def equal(self) -> bool:
        return self.face_betti == self.image_betti

    def to_json(self) -> dict[str, object]:
        return {
            "g": self.g,
            "face_betti": self.face_betti,
            "image_betti": self.image_betti,
            "faces": self.n_faces,
            "images": self.n_images,
            "equal": self.equal,
        }


def homology_comparison(g: int, budget: int | None = None) -> HomologyComparison:
    """Betti numbers of the genus >= 1 boundary faces and of their image under f_map."""
    if not 1 <= g <= MAX_CHECK_GENUS:
        raise PreconditionError(f"exhaustive checks run for 1 <= g <= {MAX_CHECK_GENUS}")
    faces = boundary_face_poset(g, min_genus=1)
    names = arc_names(g)
    zero_sets = cast(tuple[tuple[int, ...], ...], faces.labels)
    diagrams = [HandleDiagram(g, frozenset(names[i] for i in zs)) for zs in zero_sets]
    images = sorted({f_map(d).as_gr_pair() for d in diagrams}, key=GrPair.sort_key)
    image_poset = FinitePoset.from_leq(images, lambda x, y: x <= y)
    result = HomologyComparison(
        g,
        betti_numbers(order_complex(faces, budget=budget)),
        betti_numbers(order_complex(image_poset, budget=budget)),
        len(faces),
        len(images),
    )
    logger.info(f"g={g}: faces {result.face_betti} vs image {result.image_betti}")
    return result
