"""Finite posets as T0 Alexandroff spaces and their order complexes."""

import logging
from collections import Counter
from collections.abc import Callable, Hashable, Iterable, Iterator, Sequence
from typing import Any

import networkx as nx

from .config import CONFIG
from .errors import CapacityError, PreconditionError, StructuralError, UnknownElementError
from .simplicial import Simplex, SimplicialComplex

logger = logging.getLogger(__name__)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """A finite partial order stored as one up-set bitmask per element.

    Bit ``j`` of ``up[i]`` is set iff ``labels[i] <= labels[j]``. The relation
    is checked for reflexivity, antisymmetry and transitivity on construction.
    """

    def __init__(self, labels: Sequence[Hashable], up: Sequence[int], *, validate: bool = True):
        if len(labels) != len(up):
            raise StructuralError("one up-set per element is required")
        self.labels: tuple[Hashable, ...] = tuple(labels)
        self._up: tuple[int, ...] = tuple(up)
        self._position = {label: i for i, label in enumerate(self.labels)}
        if len(self._position) != len(self.labels):
            raise StructuralError("poset labels must be distinct")
        if validate:
            self._check_partial_order()

    @classmethod
    def from_leq(
        cls, labels: Sequence[Hashable], leq: Callable[[Any, Any], bool]
    ) -> "FinitePoset":
        up = []
        for x in labels:
            mask = 0
            for j, y in enumerate(labels):
                if leq(x, y):
                    mask |= 1 << j
            up.append(mask)
        return cls(labels, up)

    @classmethod
    def from_relation(
        cls, labels: Sequence[Hashable], pairs: Iterable[tuple[Hashable, Hashable]]
    ) -> "FinitePoset":
        """Reflexive-transitive closure of a set of pairs ``(x, y)`` meaning x <= y."""
        position = {label: i for i, label in enumerate(labels)}
        up = [1 << i for i in range(len(labels))]
        for x, y in pairs:
            if x not in position or y not in position:
                raise UnknownElementError(f"unknown element in pair {(x, y)!r}")
            up[position[x]] |= 1 << position[y]
        changed = True
        while changed:
            changed = False
            for i in range(len(up)):
                closed = up[i]
                for j in iter_bits(up[i]):
                    closed |= up[j]
                if closed != up[i]:
                    up[i] = closed
                    changed = True
        return cls(labels, up)

    def _check_partial_order(self) -> None:
        for i, mask in enumerate(self._up):
            if not mask >> i & 1:
                raise StructuralError(f"relation is not reflexive at {self.labels[i]!r}")
            for j in iter_bits(mask):
                if j != i and self._up[j] >> i & 1:
                    raise StructuralError(
                        f"relation is not antisymmetric: {self.labels[i]!r}, {self.labels[j]!r}"
                    )
                if self._up[j] & ~mask:
                    raise StructuralError(f"relation is not transitive above {self.labels[i]!r}")

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, x: object) -> bool:
        return x in self._position

    def index(self, x: Hashable) -> int:
        try:
            return self._position[x]
        except KeyError as e:
            raise UnknownElementError(f"{x!r} is not an element of the poset") from e

    def up_mask(self, i: int) -> int:
        return self._up[i]

    def leq(self, x: Hashable, y: Hashable) -> bool:
        return bool(self._up[self.index(x)] >> self.index(y) & 1)

    def up_set(self, x: Hashable) -> frozenset[Hashable]:
        return frozenset(self.labels[j] for j in iter_bits(self._up[self.index(x)]))

    def down_set(self, x: Hashable) -> frozenset[Hashable]:
        i = self.index(x)
        return frozenset(self.labels[j] for j, mask in enumerate(self._up) if mask >> i & 1)

    def induced(self, subset: Iterable[Hashable]) -> "FinitePoset":
        keep = sorted({self.index(x) for x in subset})
        new_pos = {old: new for new, old in enumerate(keep)}
        up = []
        for old in keep:
            mask = 0
            for j in iter_bits(self._up[old]):
                if j in new_pos:
                    mask |= 1 << new_pos[j]
            up.append(mask)
        return FinitePoset([self.labels[i] for i in keep], up, validate=False)

    def hasse_edges(self) -> list[tuple[int, int]]:
        """Covering relations ``(i, j)`` with labels[i] < labels[j]."""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self)))
        for i, mask in enumerate(self._up):
            graph.add_edges_from((i, j) for j in iter_bits(mask) if j != i)
        return sorted(nx.transitive_reduction(graph).edges())

    def hasse_json(self, label: Callable[[Any], str] = str) -> dict[str, Any]:
        return {
            "nodes": [label(x) for x in self.labels],
            "edges": [list(edge) for edge in self.hasse_edges()],
        }


class OrderComplex(SimplicialComplex):
    """The simplicial complex whose simplices are the chains of a poset."""

    def __init__(self, poset: FinitePoset, chains: Iterable[Simplex]) -> None:
        super().__init__(poset.labels, chains, validate=False)
        self.poset = poset


def up_set(poset: FinitePoset, x: Hashable) -> frozenset[Hashable]:
    """Minimal open set U_x of the Alexandroff topology."""
    return poset.up_set(x)


def order_complex(
    poset: FinitePoset, max_dim: int | None = None, budget: int | None = None
) -> OrderComplex:
    """Enumerate every chain with at most ``max_dim + 1`` elements, depth first.

    Each chain is grown upward from its minimum, so it is produced exactly
    once. Exceeding ``budget`` simplices raises a capacity error that carries
    the counts reached so far.
    """
    if max_dim is not None and max_dim < 0:
        raise PreconditionError("max_dim must be non-negative")
    budget = CONFIG["budget"] if budget is None else budget
    limit = None if max_dim is None else max_dim + 1

    strict_up = [poset.up_mask(i) & ~(1 << i) for i in range(len(poset))]
    chains: list[Simplex] = []
    by_length: Counter[int] = Counter()
    stack: list[tuple[Simplex, int]] = [((v,), strict_up[v]) for v in reversed(range(len(poset)))]
    while stack:
        chain, candidates = stack.pop()
        chains.append(chain)
        by_length[len(chain)] += 1
        if len(chains) > budget:
            partial = {
                "simplices": len(chains),
                "budget": budget,
                "by_dim": {str(k - 1): c for k, c in sorted(by_length.items())},
            }
            logger.warning(f"Order complex enumeration stopped at budget {budget}")
            raise CapacityError(f"order complex exceeds the simplex budget of {budget}", partial)
        if limit is not None and len(chain) >= limit:
            continue
        for w in iter_bits(candidates):
            stack.append((chain + (w,), strict_up[w]))

    logger.debug(f"Order complex: {dict(sorted(by_length.items()))} chains by length")
    return OrderComplex(poset, chains)


def is_cone_with_apex(complex_: SimplicialComplex, x: Hashable) -> bool:
    """True iff adding x to any simplex gives a simplex."""
    apex = complex_.vertex_index(x)
    for k in range(complex_.dim + 1):
        for simplex in complex_.simplices(k):
            if apex not in simplex and not complex_.contains(simplex + (apex,)):
                return False
    return True


def max_chain_length(poset: FinitePoset) -> int:
    """Number of elements in a longest chain."""
    if not len(poset):
        raise PreconditionError("empty poset has no chains")
    # Elements strictly above i have strictly smaller up-sets, so fill heights by up-set size.
    order = sorted(range(len(poset)), key=lambda i: poset.up_mask(i).bit_count())
    height = [0] * len(poset)
    for i in order:
        above = poset.up_mask(i) & ~(1 << i)
        height[i] = 1 + max((height[j] for j in iter_bits(above)), default=0)
    return max(height)
