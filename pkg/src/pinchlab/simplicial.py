"""Explicit abstract simplicial complexes."""

from collections.abc import Hashable, Iterable, Sequence
from itertools import combinations

import networkx as nx

from .errors import StructuralError, UnknownElementError

Simplex = tuple[int, ...]


class SimplicialComplex:
    """A finite abstract simplicial complex on labelled vertices.

    Vertices are the indices ``0..len(labels)-1``; every label is a 0-simplex.
    Simplices are stored per dimension as ascending index tuples, sorted
    lexicographically, so simplex indices are stable across runs.
    """

    def __init__(
        self,
        labels: Sequence[Hashable],
        simplices: Iterable[Sequence[int]],
        *,
        validate: bool = True,
    ) -> None:
        self.labels: tuple[Hashable, ...] = tuple(labels)
        n_vertices = len(self.labels)
        by_dim: dict[int, set[Simplex]] = {}
        if n_vertices:
            by_dim[0] = {(i,) for i in range(n_vertices)}
        for raw in simplices:
            simplex = tuple(sorted(raw))
            if not simplex:
                continue
            if len(set(simplex)) != len(simplex):
                raise StructuralError(f"repeated vertex in simplex {simplex}")
            if simplex[0] < 0 or simplex[-1] >= n_vertices:
                raise StructuralError(f"simplex {simplex} uses an unknown vertex")
            by_dim.setdefault(len(simplex) - 1, set()).add(simplex)

        top = max(by_dim, default=-1)
        self._simplices: list[list[Simplex]] = [sorted(by_dim.get(k, ())) for k in range(top + 1)]
        self._index: list[dict[Simplex, int]] = [
            {s: i for i, s in enumerate(layer)} for layer in self._simplices
        ]
        self._vertex_of: dict[Hashable, int] = {label: i for i, label in enumerate(self.labels)}
        if validate:
            self._check_closed()

    @classmethod
    def from_facets(
        cls, facets: Iterable[Sequence[Hashable]], labels: Sequence[Hashable] | None = None
    ) -> "SimplicialComplex":
        """Downward closure of a list of facets given by vertex labels."""
        facets = [tuple(f) for f in facets]
        if labels is None:
            seen: dict[Hashable, None] = {}
            for facet in facets:
                for v in facet:
                    seen.setdefault(v, None)
            labels = list(seen)
        position = {label: i for i, label in enumerate(labels)}
        closure: set[Simplex] = set()
        for facet in facets:
            try:
                idx = sorted(position[v] for v in facet)
            except KeyError as e:
                raise UnknownElementError(f"unknown vertex {e.args[0]!r}") from e
            for k in range(1, len(idx) + 1):
                closure.update(combinations(idx, k))
        return cls(labels, closure, validate=False)

    @classmethod
    def from_simplices(
        cls, simplices: Iterable[Sequence[Hashable]], labels: Sequence[Hashable]
    ) -> "SimplicialComplex":
        """Build from an explicit simplex list, rejecting lists that are not closed."""
        position = {label: i for i, label in enumerate(labels)}
        try:
            indexed = [[position[v] for v in s] for s in simplices]
        except KeyError as e:
            raise UnknownElementError(f"unknown vertex {e.args[0]!r}") from e
        return cls(labels, indexed, validate=True)

    def _check_closed(self) -> None:
        for k in range(1, len(self._simplices)):
            below = self._index[k - 1]
            for simplex in self._simplices[k]:
                for face in combinations(simplex, k):
                    if face not in below:
                        raise StructuralError(f"face {face} of {simplex} is missing")

    @property
    def dim(self) -> int:
        return len(self._simplices) - 1

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    def is_empty(self) -> bool:
        return not self.labels

    def simplices(self, k: int) -> list[Simplex]:
        if 0 <= k < len(self._simplices):
            return self._simplices[k]
        return []

    def count(self, k: int) -> int:
        return len(self.simplices(k))

    def __len__(self) -> int:
        return sum(len(layer) for layer in self._simplices)

    def f_vector(self) -> list[int]:
        return [len(layer) for layer in self._simplices]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def vertex_index(self, label: Hashable) -> int:
        try:
            return self._vertex_of[label]
        except KeyError as e:
            raise UnknownElementError(f"unknown vertex {label!r}") from e

    def contains(self, simplex: Iterable[int]) -> bool:
        key = tuple(sorted(set(simplex)))
        k = len(key) - 1
        return 0 <= k < len(self._index) and key in self._index[k]

    def index_of(self, simplex: Iterable[int]) -> int:
        key = tuple(sorted(simplex))
        k = len(key) - 1
        if not self.contains(key):
            raise StructuralError(f"{key} is not a simplex")
        return self._index[k][key]

    def one_skeleton(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n_vertices))
        graph.add_edges_from(self.simplices(1))
        return graph

    def vertex_degrees(self) -> list[int]:
        degrees = [0] * self.n_vertices
        for u, v in self.simplices(1):
            degrees[u] += 1
            degrees[v] += 1
        return degrees

    def is_connected(self) -> bool:
        return self.n_vertices > 0 and nx.is_connected(self.one_skeleton())

    def face_list_text(self) -> str:
        """One simplex per line, vertex indices ascending, by dimension."""
        lines = [" ".join(map(str, s)) for layer in self._simplices for s in layer]
        return "\n".join(lines) + ("\n" if lines else "")
