"""Simplicial homology with Z2 coefficients.

Boundary matrices are held column-wise: the boundary of the i-th k-simplex is
an int whose bit j marks the j-th (k-1)-simplex. Ranks come from bitset
Gaussian elimination in ``gf2``.
"""

import logging
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DomainError, PreconditionError, StructuralError
from .gf2 import pivot_basis, rank_of, reduce_against
from .poset import iter_bits
from .simplicial import SimplicialComplex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Z2Cycle:
    """A k-chain given by the indices of its k-simplices."""

    dim: int
    support: frozenset[int]

    @property
    def mask(self) -> int:
        out = 0
        for i in self.support:
            out |= 1 << i
        return out

    @classmethod
    def from_mask(cls, dim: int, mask: int) -> "Z2Cycle":
        return cls(dim, frozenset(iter_bits(mask)))

    @classmethod
    def from_simplices(
        cls, complex_: SimplicialComplex, simplices: Iterable[Sequence[Hashable]]
    ) -> "Z2Cycle":
        """Chain from simplices written with vertex labels; repeated simplices cancel."""
        mask = 0
        dims = set()
        for simplex in simplices:
            idx = [complex_.vertex_index(v) for v in simplex]
            dims.add(len(idx) - 1)
            mask ^= 1 << complex_.index_of(idx)
        if len(dims) > 1:
            raise StructuralError("chain mixes simplices of different dimensions")
        return cls.from_mask(dims.pop() if dims else 0, mask)

    def simplices(self, complex_: SimplicialComplex) -> list[tuple[Hashable, ...]]:
        """The support written with vertex labels, in simplex index order."""
        layer = complex_.simplices(self.dim)
        return [tuple(complex_.labels[v] for v in layer[i]) for i in sorted(self.support)]


class ChainComplexZ2:
    """Boundary maps of a simplicial complex over GF(2)."""

    def __init__(self, complex_: SimplicialComplex) -> None:
        self.complex = complex_
        self.boundaries: list[list[int]] = [[0] * complex_.count(0)]
        for k in range(1, complex_.dim + 1):
            columns = []
            for simplex in complex_.simplices(k):
                column = 0
                for face in combinations(simplex, k):
                    # index_of raises StructuralError for a missing face
                    column |= 1 << complex_.index_of(face)
                columns.append(column)
            self.boundaries.append(columns)
        self._ranks: dict[int, int] = {}
        self._check_boundary_squared()

    def _check_boundary_squared(self) -> None:
        for k in range(2, len(self.boundaries)):
            below = self.boundaries[k - 1]
            for column in self.boundaries[k]:
                acc = 0
                for j in iter_bits(column):
                    acc ^= below[j]
                if acc:
                    raise StructuralError(f"boundary of boundary is non-zero in dimension {k}")

    def boundary(self, k: int) -> list[int]:
        if 0 <= k < len(self.boundaries):
            return self.boundaries[k]
        return []

    def rank(self, k: int) -> int:
        if k not in self._ranks:
            self._ranks[k] = rank_of(self.boundary(k)) if k >= 1 else 0
        return self._ranks[k]

    def chain_boundary(self, z: Z2Cycle) -> int:
        columns = self.boundary(z.dim)
        acc = 0
        for i in z.support:
            if i >= len(columns):
                raise StructuralError(f"simplex index {i} out of range in dimension {z.dim}")
            acc ^= columns[i]
        return acc


def betti_numbers(complex_: SimplicialComplex) -> list[int]:
    """b_k = dim ker d_k - dim im d_(k+1) for k = 0..dim."""
    chains = ChainComplexZ2(complex_)
    betti = [
        complex_.count(k) - chains.rank(k) - chains.rank(k + 1) for k in range(complex_.dim + 1)
    ]
    logger.debug(f"Betti numbers {betti} for f-vector {complex_.f_vector()}")
    return betti


def reduced_betti(complex_: SimplicialComplex) -> list[int]:
    if complex_.is_empty():
        raise DomainError("reduced homology of the empty complex is not defined here")
    betti = betti_numbers(complex_)
    betti[0] -= 1
    return betti


def is_boundary(complex_: SimplicialComplex, z: Z2Cycle) -> bool:
    """Decide whether a cycle lies in the image of the next boundary map."""
    chains = ChainComplexZ2(complex_)
    if chains.chain_boundary(z):
        raise PreconditionError("chain is not a cycle")
    if not z.support:
        return True
    image = pivot_basis(chains.boundary(z.dim + 1))
    return reduce_against(z.mask, image) == 0


def cycle_representatives(complex_: SimplicialComplex, k: int) -> list[Z2Cycle]:
    """Cycles whose classes form a basis of H_k."""
    chains = ChainComplexZ2(complex_)
    n_k = complex_.count(k)
    # Kernel of d_k: track the combination of columns that reduces to zero.
    kernel: list[int] = []
    if k == 0:
        kernel = [1 << i for i in range(n_k)]
    else:
        pivots: dict[int, tuple[int, int]] = {}
        for i, column in enumerate(chains.boundary(k)):
            combo = 1 << i
            while column:
                top = column.bit_length() - 1
                if top not in pivots:
                    pivots[top] = (column, combo)
                    break
                column ^= pivots[top][0]
                combo ^= pivots[top][1]
            else:
                kernel.append(combo)

    span = pivot_basis(chains.boundary(k + 1))
    representatives = []
    for z in kernel:
        residue = reduce_against(z, span)
        if residue:
            span[residue.bit_length() - 1] = residue
            representatives.append(Z2Cycle.from_mask(k, z))
    return representatives


def boundary_squared_is_zero(complex_: SimplicialComplex) -> bool:
    try:
        ChainComplexZ2(complex_)
    except StructuralError:
        return False
    return True


def euler_check(complex_: SimplicialComplex) -> bool:
    """Euler characteristic from simplex counts equals the alternating Betti sum."""
    betti = betti_numbers(complex_)
    return complex_.euler_characteristic() == sum((-1) ** k * b for k, b in enumerate(betti))


def _dense_rank(matrix: np.ndarray) -> int:
    m = matrix.copy() % 2
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        hits = np.nonzero(m[rank:, c])[0]
        if hits.size == 0:
            continue
        pivot = rank + int(hits[0])
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        mask = m[:, c].astype(bool)
        mask[rank] = False
        m[mask] ^= m[rank]
        rank += 1
    return rank


def naive_betti_numbers(complex_: SimplicialComplex) -> list[int]:
    """Betti numbers by dense uint8 elimination, without bitset packing."""
    ranks = [0]
    for k in range(1, complex_.dim + 1):
        faces = complex_.simplices(k - 1)
        face_row = {face: i for i, face in enumerate(faces)}
        matrix = np.zeros((len(faces), complex_.count(k)), dtype=np.uint8)
        for j, simplex in enumerate(complex_.simplices(k)):
            for face in combinations(simplex, k):
                matrix[face_row[face], j] = 1
        ranks.append(_dense_rank(matrix))
    ranks.append(0)
    return [complex_.count(k) - ranks[k] - ranks[k + 1] for k in range(complex_.dim + 1)]
