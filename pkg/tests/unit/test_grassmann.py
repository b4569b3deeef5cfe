"""Unit tests for Grassmannian posets and rank-filtered pair spaces."""

import pytest

from src.pinchlab.errors import CapacityError, PreconditionError
from src.pinchlab.gf2 import GF2Subspace
from src.pinchlab.grassmann import GrPair, GrRangePoset, build_gr, build_gr_range, gr_range_homology
from src.pinchlab.poset import max_chain_length


class TestBuildGr:
    """Test the inclusion poset of all subspaces."""

    @pytest.mark.parametrize("n,count,chain", [(1, 2, 2), (2, 5, 3), (3, 16, 4)])
    def test_sizes(self, n: int, count: int, chain: int) -> None:
        """Test element counts and longest chains."""
        poset = build_gr(n)
        assert len(poset) == count
        assert max_chain_length(poset) == chain

    def test_order_is_inclusion(self) -> None:
        """Test that the zero subspace is below the full space."""
        poset = build_gr(2)
        assert poset.leq(GF2Subspace.zero(2), GF2Subspace.full(2))
        assert not poset.leq(GF2Subspace.full(2), GF2Subspace.zero(2))

    def test_capacity(self) -> None:
        """Test the size cap."""
        with pytest.raises(CapacityError):
            build_gr(5)


class TestBuildGrRange:
    """Test Gr^n[n1, n2]."""

    @pytest.mark.parametrize("n,n1,n2,count", [(2, 1, 1, 12), (2, 0, 2, 25), (2, 2, 2, 1)])
    def test_counts(self, n: int, n1: int, n2: int, count: int) -> None:
        """Test the number of pairs in each rank window."""
        assert len(build_gr_range(n, n1, n2).poset) == count

    def test_only_full_pair_has_rank_two(self) -> None:
        """Test that rank 2 on Z2^2 forces both subspaces to be everything."""
        (pair,) = build_gr_range(2, 2, 2).pairs
        assert pair.a1 == GF2Subspace.full(2)
        assert pair.a2 == GF2Subspace.full(2)

    def test_ranks_in_window(self, gr2_rank1: GrRangePoset) -> None:
        """Test that every pair carries its form rank."""
        assert {p.rank_i for p in gr2_rank1.pairs} == {1}

    def test_componentwise_order(self) -> None:
        """Test the product order on pairs."""
        zero, full = GF2Subspace.zero(2), GF2Subspace.full(2)
        low = GrPair.of(zero, full)
        high = GrPair.of(full, full)
        assert low <= high
        assert low < high
        assert not high <= low

    @pytest.mark.parametrize("args", [(2, 2, 1), (2, -1, 1), (4, 1, 1), (0, 0, 0), (2, 1, 3)])
    def test_invalid_ranges(self, args: tuple[int, int, int]) -> None:
        """Test that malformed windows are refused."""
        with pytest.raises(PreconditionError):
            build_gr_range(*args)


class TestRangeHomology:
    """Test Betti numbers of rank windows."""

    def test_circle(self) -> None:
        """Test that Gr^2[1] is a circle."""
        assert gr_range_homology(2, 1, 1) == [1, 1]

    def test_unfiltered_is_a_cone(self) -> None:
        """Test that Gr^2[0, 2] is acyclic, being a cone over (0, 0)."""
        betti = gr_range_homology(2, 0, 2)
        assert betti[0] == 1
        assert not any(betti[1:])

    def test_budget(self) -> None:
        """Test that a tiny budget is reported as a capacity error."""
        with pytest.raises(CapacityError):
            gr_range_homology(2, 1, 1, budget=3)
