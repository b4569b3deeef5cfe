"""Unit tests for GF(2) vectors, matrices and subspaces."""

import numpy as np
import pytest

from src.pinchlab.errors import CapacityError, PreconditionError, StructuralError
from src.pinchlab.gf2 import (
    GF2Matrix,
    GF2Subspace,
    GF2Vector,
    brute_force_subspaces,
    echelonize,
    enumerate_subspaces,
    galois_number,
    parse_bits,
    restricted_form_rank,
)


def _sub(*rows: str) -> GF2Subspace:
    n = len(rows[0])
    return GF2Subspace.span([parse_bits(r) for r in rows], n)


def _random_rows(rng: np.random.Generator, n: int, count: int) -> list[int]:
    return [int(x) for x in rng.integers(0, 1 << n, size=count)]


class TestVectors:
    """Test bit-string vectors."""

    def test_coordinates_read_left_to_right(self) -> None:
        """Test that coordinate i of a vector is character i of its string."""
        v = GF2Vector.from_str("110")
        assert str(v) == "110"
        assert GF2Vector.unit(0, 3) == GF2Vector.from_str("100")
        assert GF2Vector.unit(2, 3) == GF2Vector.from_str("001")

    def test_add_and_dot(self) -> None:
        """Test addition and the standard dot product."""
        x = GF2Vector.from_str("110")
        y = GF2Vector.from_str("011")
        assert str(x + y) == "101"
        assert x.dot(y) == 1
        assert x.dot(x) == 0

    def test_width_mismatch(self) -> None:
        """Test that vectors of different widths cannot be combined."""
        with pytest.raises(StructuralError):
            GF2Vector.from_str("10") + GF2Vector.from_str("100")

    @pytest.mark.parametrize("text", ["", "102", "1 0"])
    def test_parse_rejects_non_bits(self, text: str) -> None:
        """Test that malformed bit strings are rejected."""
        with pytest.raises(StructuralError):
            parse_bits(text)


class TestMatrices:
    """Test GF(2) matrix arithmetic."""

    def test_inverse_of_lower_triangular(self) -> None:
        """Test the inverse of [[1,0],[1,1]], which is its own inverse."""
        m = GF2Matrix.from_lists([[1, 0], [1, 1]])
        assert m.inverse() == m
        assert m @ m.inverse() == GF2Matrix.identity(2)

    def test_transpose(self) -> None:
        """Test transposition."""
        m = GF2Matrix.from_lists([[1, 0, 1], [0, 1, 1]])
        assert m.transpose().to_lists() == [[1, 0], [0, 1], [1, 1]]

    def test_singular_matrix(self) -> None:
        """Test that a singular matrix has no inverse."""
        with pytest.raises(PreconditionError):
            GF2Matrix.from_lists([[1, 1], [1, 1]]).inverse()

    def test_product_shape_mismatch(self) -> None:
        """Test that incompatible shapes cannot be multiplied."""
        with pytest.raises(StructuralError):
            GF2Matrix.identity(2) @ GF2Matrix.identity(3)

    def test_unequal_rows(self) -> None:
        """Test that ragged rows are rejected."""
        with pytest.raises(StructuralError):
            GF2Matrix.from_strings(["10", "101"])


class TestEchelonize:
    """Test canonical subspaces from spanning rows."""

    def test_dependent_rows(self) -> None:
        """Test that 101 = 110 + 011 leaves a plane in reduced echelon form."""
        sub = echelonize(GF2Matrix.from_strings(["110", "011", "101"]))
        assert sub.dim == 2
        assert sub.label() == "<101,011>"
        assert sub.contains(parse_bits("110"))

    def test_empty_rows(self) -> None:
        """Test that no rows give the zero subspace."""
        sub = echelonize(GF2Matrix.from_strings([], width=3))
        assert sub.dim == 0
        assert sub == GF2Subspace.zero(3)

    def test_standard_basis(self) -> None:
        """Test that 10 and 01 span everything."""
        assert echelonize(GF2Matrix.from_strings(["10", "01"])) == GF2Subspace.full(2)

    def test_equal_spans_are_equal(self) -> None:
        """Test that the stored basis does not depend on the spanning set."""
        assert _sub("110", "011") == _sub("101", "110", "000")
        assert hash(_sub("110", "011")) == hash(_sub("011", "101"))

    @pytest.mark.parametrize("seed", range(10))
    def test_invariant_under_row_operations(self, seed: int) -> None:
        """Test that shuffling rows and adding one row to another keeps the subspace."""
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 7))
        rows = _random_rows(rng, n, int(rng.integers(1, 6)))
        expected = echelonize(GF2Matrix(tuple(rows), n))
        for _ in range(20):
            rows = [rows[i] for i in rng.permutation(len(rows))]
            if len(rows) > 1:
                i, j = (int(k) for k in rng.choice(len(rows), size=2, replace=False))
                rows[i] ^= rows[j]
            assert echelonize(GF2Matrix(tuple(rows), n)) == expected


class TestSubspaceLattice:
    """Test inclusion, join and intersection."""

    def test_inclusion(self) -> None:
        """Test the subspace partial order."""
        line = _sub("100")
        plane = _sub("100", "010")
        assert line <= plane
        assert line < plane
        assert not plane <= line
        assert GF2Subspace.zero(3) <= line

    def test_join_and_meet(self) -> None:
        """Test join and intersection of two planes in Z2^3."""
        p = _sub("100", "010")
        q = _sub("010", "001")
        assert p.join(q) == GF2Subspace.full(3)
        assert p.intersection(q) == _sub("010")

    def test_ambient_mismatch(self) -> None:
        """Test that subspaces of different spaces are not comparable."""
        with pytest.raises(StructuralError):
            _ = GF2Subspace.full(2) <= GF2Subspace.full(3)

    def test_elements(self) -> None:
        """Test that a plane has four elements."""
        assert sorted(_sub("110", "011").elements()) == sorted([0, 0b110, 0b011, 0b101])


class TestEnumeration:
    """Test subspace enumeration against counts and brute force."""

    @pytest.mark.parametrize("n,expected", [(1, 2), (2, 5), (3, 16), (4, 67)])
    def test_counts(self, n: int, expected: int) -> None:
        """Test the number of subspaces of Z2^n."""
        assert galois_number(n) == expected
        assert len(enumerate_subspaces(n)) == expected

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_brute_force(self, n: int) -> None:
        """Test enumeration against closure testing of every subset."""
        assert enumerate_subspaces(n) == brute_force_subspaces(n)

    def test_no_duplicates(self) -> None:
        """Test that every subspace appears once."""
        subspaces = enumerate_subspaces(4)
        assert len(set(subspaces)) == len(subspaces)

    def test_capacity(self) -> None:
        """Test that n = 7 is refused with the expected count attached."""
        with pytest.raises(CapacityError) as excinfo:
            enumerate_subspaces(7)
        assert excinfo.value.partial["galois_number"] == galois_number(7)


class TestRestrictedFormRank:
    """Test the rank of a bilinear form on a pair of subspaces."""

    @pytest.mark.parametrize(
        "a1,a2,expected",
        [
            (("10", "01"), ("10", "01"), 2),
            (("10",), ("01",), 0),
            (("10",), ("10", "01"), 1),
        ],
    )
    def test_identity_form(self, a1: tuple[str, ...], a2: tuple[str, ...], expected: int) -> None:
        """Test the standard form on subspaces of Z2^2."""
        identity = GF2Matrix.identity(2)
        assert restricted_form_rank(identity, _sub(*a1), _sub(*a2)) == expected

    def test_dimension_mismatch(self) -> None:
        """Test that the form and subspaces must share a dimension."""
        with pytest.raises(StructuralError):
            restricted_form_rank(GF2Matrix.identity(3), _sub("10"), _sub("01"))

    @pytest.mark.parametrize("seed", range(10))
    def test_symmetric_under_transpose(self, seed: int) -> None:
        """Test that transposing the form and swapping the subspaces keeps the rank."""
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 7))
        form = GF2Matrix(tuple(_random_rows(rng, n, n)), n)
        for _ in range(10):
            a1 = GF2Subspace.span(_random_rows(rng, n, int(rng.integers(0, n + 1))), n)
            a2 = GF2Subspace.span(_random_rows(rng, n, int(rng.integers(0, n + 1))), n)
            rank = restricted_form_rank(form, a1, a2)
            assert rank == restricted_form_rank(form.transpose(), a2, a1)
            assert rank <= min(a1.dim, a2.dim)
