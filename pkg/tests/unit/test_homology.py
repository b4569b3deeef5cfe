"""Unit tests for Z2 simplicial homology."""

from itertools import combinations

import numpy as np
import pytest
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from src.pinchlab.errors import DomainError, PreconditionError
from src.pinchlab.grassmann import GrRangePoset, build_gr
from src.pinchlab.homology import (
    Z2Cycle,
    betti_numbers,
    boundary_squared_is_zero,
    cycle_representatives,
    euler_check,
    is_boundary,
    naive_betti_numbers,
    reduced_betti,
)
from src.pinchlab.linkhom import twelve_cycle
from src.pinchlab.poset import order_complex
from src.pinchlab.simplicial import SimplicialComplex

Z2 = GF(2)


def _sympy_betti(cx: SimplicialComplex) -> list[int]:
    """Betti numbers from boundary ranks computed by sympy over GF(2)."""
    ranks = [0]
    for k in range(1, cx.dim + 1):
        faces = cx.simplices(k - 1)
        row_of = {face: i for i, face in enumerate(faces)}
        entries = [[Z2(0)] * cx.count(k) for _ in faces]
        for j, simplex in enumerate(cx.simplices(k)):
            for face in combinations(simplex, k):
                entries[row_of[face]][j] = Z2(1)
        ranks.append(DomainMatrix(entries, (len(faces), cx.count(k)), Z2).rank())
    ranks.append(0)
    return [cx.count(k) - ranks[k] - ranks[k + 1] for k in range(cx.dim + 1)]


def _random_complex(rng: np.random.Generator) -> SimplicialComplex:
    n = int(rng.integers(3, 9))
    facets = [
        rng.choice(n, size=int(rng.integers(1, min(n, 4) + 1)), replace=False).tolist()
        for _ in range(int(rng.integers(1, 15)))
    ]
    return SimplicialComplex.from_facets(facets, labels=list(range(n)))


class TestBettiNumbers:
    """Test Betti numbers of small complexes."""

    def test_hollow_triangle(self, hollow_triangle: SimplicialComplex) -> None:
        """Test that a hollow triangle is a circle."""
        assert betti_numbers(hollow_triangle) == [1, 1]

    def test_solid_triangle(self, solid_triangle: SimplicialComplex) -> None:
        """Test that a solid triangle is contractible."""
        assert betti_numbers(solid_triangle) == [1, 0, 0]
        assert reduced_betti(solid_triangle) == [0, 0, 0]

    def test_gr2_rank1_is_a_circle(self, gr2_rank1: GrRangePoset) -> None:
        """Test the homology of Gr^2[1]."""
        assert betti_numbers(order_complex(gr2_rank1.poset)) == [1, 1]

    def test_grassmannian_is_acyclic(self) -> None:
        """Test that Gr(Z2^2) has trivial reduced homology."""
        assert not any(reduced_betti(order_complex(build_gr(2))))

    def test_two_components(self) -> None:
        """Test b0 of two disjoint edges."""
        cx = SimplicialComplex.from_facets([("a", "b"), ("c", "d")])
        assert betti_numbers(cx) == [2, 0]

    def test_empty_complex(self) -> None:
        """Test that reduced homology of the empty complex is refused."""
        empty = SimplicialComplex([], [])
        assert betti_numbers(empty) == []
        with pytest.raises(DomainError):
            reduced_betti(empty)

    def test_euler_check(self, hollow_triangle: SimplicialComplex) -> None:
        """Test that simplex counts and Betti numbers agree on the Euler characteristic."""
        assert euler_check(hollow_triangle)
        assert boundary_squared_is_zero(hollow_triangle)

    def test_against_sympy_and_dense_ranks(self, rng: np.random.Generator) -> None:
        """Test bitset ranks against two independent rank computations."""
        for _ in range(30):
            cx = _random_complex(rng)
            expected = _sympy_betti(cx)
            assert betti_numbers(cx) == expected
            assert naive_betti_numbers(cx) == expected


class TestBoundaries:
    """Test cycle and boundary membership."""

    def test_triangle_boundary_bounds(self, solid_triangle: SimplicialComplex) -> None:
        """Test that the boundary of the 2-simplex is a boundary."""
        edges = [("a", "b"), ("b", "c"), ("a", "c")]
        assert is_boundary(solid_triangle, Z2Cycle.from_simplices(solid_triangle, edges))

    def test_circle_does_not_bound(self, hollow_triangle: SimplicialComplex) -> None:
        """Test that the fundamental cycle of a circle is not a boundary."""
        edges = [("a", "b"), ("b", "c"), ("a", "c")]
        assert not is_boundary(hollow_triangle, Z2Cycle.from_simplices(hollow_triangle, edges))

    def test_empty_cycle(self, hollow_triangle: SimplicialComplex) -> None:
        """Test that the zero chain bounds."""
        assert is_boundary(hollow_triangle, Z2Cycle(1, frozenset()))

    def test_non_cycle(self, hollow_triangle: SimplicialComplex) -> None:
        """Test that a chain with boundary is refused."""
        with pytest.raises(PreconditionError):
            is_boundary(hollow_triangle, Z2Cycle.from_simplices(hollow_triangle, [("a", "b")]))

    def test_twelve_cycle_does_not_bound(self, gr2_rank1: GrRangePoset) -> None:
        """Test that the twelve-edge cycle of Gr^2[1] carries its first homology."""
        cx = order_complex(gr2_rank1.poset)
        cycle = Z2Cycle.from_simplices(cx, twelve_cycle().edge_cycle())
        assert len(cycle.support) == 12
        assert not is_boundary(cx, cycle)

    def test_repeated_simplices_cancel(self, hollow_triangle: SimplicialComplex) -> None:
        """Test that a simplex listed twice drops out of the chain."""
        z = Z2Cycle.from_simplices(hollow_triangle, [("a", "b"), ("b", "a")])
        assert not z.support


class TestRepresentatives:
    """Test homology basis representatives."""

    def test_circle_has_one_loop(self, hollow_triangle: SimplicialComplex) -> None:
        """Test that a circle has one representative 1-cycle of three edges."""
        reps = cycle_representatives(hollow_triangle, 1)
        assert len(reps) == 1
        assert len(reps[0].support) == 3

    def test_components(self) -> None:
        """Test one 0-cycle per component."""
        cx = SimplicialComplex.from_facets([("a", "b"), ("c", "d"), ("e",)])
        assert len(cycle_representatives(cx, 0)) == 3

    def test_labelled_simplices(self, hollow_triangle: SimplicialComplex) -> None:
        """Test that a representative reads back as labelled edges that rebuild it."""
        z = cycle_representatives(hollow_triangle, 1)[0]
        edges = z.simplices(hollow_triangle)
        assert sorted(edges) == [("a", "b"), ("a", "c"), ("b", "c")]
        assert Z2Cycle.from_simplices(hollow_triangle, edges) == z
