"""Shared pytest fixtures for pinchlab tests."""

from collections.abc import Generator

import numpy as np
import pytest

from src.pinchlab.grassmann import GrRangePoset, build_gr_range
from src.pinchlab.poset import FinitePoset
from src.pinchlab.schemas import RegionProfile
from src.pinchlab.simplicial import SimplicialComplex


@pytest.fixture
def profile() -> RegionProfile:
    """Provide the default region profile."""
    return RegionProfile()


@pytest.fixture
def rng() -> Generator[np.random.Generator, None, None]:
    """Provide a seeded random generator."""
    yield np.random.default_rng(20240501)


@pytest.fixture
def hollow_triangle() -> SimplicialComplex:
    """Three vertices and three edges, no 2-face."""
    return SimplicialComplex.from_facets([("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture
def solid_triangle() -> SimplicialComplex:
    """The full 2-simplex on three vertices."""
    return SimplicialComplex.from_facets([("a", "b", "c")])


@pytest.fixture
def chain_poset() -> FinitePoset:
    """The chain a < b < c."""
    return FinitePoset.from_relation(["a", "b", "c"], [("a", "b"), ("b", "c")])


@pytest.fixture
def gr2_rank1() -> GrRangePoset:
    """Gr^2[1], the twelve pairs of subspaces of Z2^2 with form rank 1."""
    return build_gr_range(2, 1, 1)
