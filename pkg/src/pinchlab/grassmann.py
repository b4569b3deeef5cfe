"""Grassmannian posets over GF(2) and the rank-filtered pair spaces Gr^n[n1, n2]."""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import cast

from .errors import CapacityError, PreconditionError
from .gf2 import GF2Matrix, GF2Subspace, enumerate_subspaces, restricted_form_rank
from .homology import betti_numbers
from .poset import FinitePoset, order_complex

logger = logging.getLogger(__name__)

MAX_GR_DIM = 4
MAX_PAIR_DIM = 3


@dataclass(frozen=True)
class GrPair:
    """A pair of subspaces ordered componentwise, with the rank of the standard form on it."""

    a1: GF2Subspace
    a2: GF2Subspace
    rank_i: int

    @classmethod
    def of(cls, a1: GF2Subspace, a2: GF2Subspace) -> "GrPair":
        identity = GF2Matrix.identity(a1.ambient_dim)
        return cls(a1, a2, restricted_form_rank(identity, a1, a2))

    def __le__(self, other: "GrPair") -> bool:
        return self.a1 <= other.a1 and self.a2 <= other.a2

    def __lt__(self, other: "GrPair") -> bool:
        return self != other and self <= other

    def sort_key(self) -> tuple[tuple[int, tuple[int, ...]], tuple[int, tuple[int, ...]]]:
        return (self.a1.sort_key(), self.a2.sort_key())

    def label(self) -> str:
        return f"({self.a1.label()}, {self.a2.label()})"


@dataclass(frozen=True)
class GrRangePoset:
    n: int
    n1: int
    n2: int
    poset: FinitePoset

    @property
    def pairs(self) -> tuple[GrPair, ...]:
        return cast(tuple[GrPair, ...], self.poset.labels)


def build_gr(n: int) -> FinitePoset:
    """All subspaces of GF(2)^n ordered by inclusion."""
    if n < 1:
        raise PreconditionError("n must be positive")
    if n > MAX_GR_DIM:
        raise CapacityError(f"Gr(Z2^n) is built up to n={MAX_GR_DIM}, got {n}")
    return FinitePoset.from_leq(enumerate_subspaces(n), lambda x, y: x <= y)


@lru_cache(maxsize=16)
def build_gr_range(n: int, n1: int, n2: int) -> GrRangePoset:
    """Pairs (A1, A2) with n1 <= rank(I restricted to A1 + A2) <= n2."""
    if not 0 <= n1 <= n2 <= n <= MAX_PAIR_DIM or n < 1:
        raise PreconditionError(
            f"need 0 <= n1 <= n2 <= n <= {MAX_PAIR_DIM} with n >= 1, got ({n}, {n1}, {n2})"
        )
    subspaces = enumerate_subspaces(n)
    pairs = [GrPair.of(a1, a2) for a1 in subspaces for a2 in subspaces]
    kept = sorted((p for p in pairs if n1 <= p.rank_i <= n2), key=GrPair.sort_key)
    logger.info(f"Gr^{n}[{n1},{n2}] has {len(kept)} of {len(pairs)} pairs")
    return GrRangePoset(n, n1, n2, FinitePoset.from_leq(kept, lambda x, y: x <= y))


def gr_range_homology(n: int, n1: int, n2: int, budget: int | None = None) -> list[int]:
    """Z2 Betti numbers of the order complex of Gr^n[n1, n2]."""
    gr = build_gr_range(n, n1, n2)
    return betti_numbers(order_complex(gr.poset, budget=budget))
