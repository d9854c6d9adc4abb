from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simpdepth import (
    InputError,
    Orientation,
    Point,
    Simplex,
    as_point,
    contains,
    orientation,
)

import oracles

grid = st.sampled_from([i / 4 for i in range(-8, 9)])


def test_point_basics():
    p = as_point((1.0, 2.0))
    assert isinstance(p, Point)
    assert p.dim == 2 and p.coords == (1.0, 2.0)
    with pytest.raises(InputError):
        as_point((float("nan"), 0.0))
    with pytest.raises(InputError):
        as_point(())


def test_simplex_validation():
    s = Simplex(((0.0, 0.0), (1.0, 0.0), (0.0, 1.0)))
    assert s.dim == 2
    with pytest.raises(InputError):
        Simplex(((0.0, 0.0), (1.0, 0.0)))  # needs d+1 vertices
    with pytest.raises(InputError):
        Simplex(((0.0,), (1.0, 0.0)))  # mixed dimensions


def test_orientation_enum():
    assert orientation([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]) is Orientation.POSITIVE
    assert orientation([(0.0, 0.0), (0.0, 1.0), (1.0, 0.0)]) is Orientation.NEGATIVE
    assert orientation([(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]) is Orientation.ZERO


def test_contains_hand_cases_2d():
    tri = ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))
    assert contains(tri, (0.25, 0.25))
    assert contains(tri, (0.0, 0.0))  # vertex, closed convention
    assert contains(tri, (0.5, 0.5))  # on the hypotenuse
    assert not contains(tri, (0.51, 0.5))
    assert not contains(tri, (-1e-12, 0.5))


def test_contains_degenerate_simplices():
    # collinear "triangle" is a segment
    seg = ((0.0, 0.0), (1.0, 1.0), (2.0, 2.0))
    assert contains(seg, (1.5, 1.5))
    assert contains(seg, (2.0, 2.0))
    assert not contains(seg, (2.5, 2.5))
    assert not contains(seg, (1.0, 1.0 + 1e-9))
    # repeated vertices collapse to a point
    pt = ((0.5, 0.5), (0.5, 0.5), (0.5, 0.5))
    assert contains(pt, (0.5, 0.5))
    assert not contains(pt, (0.5, 0.5000001))


def test_contains_1d():
    assert contains(((0.0,), (1.0,)), (0.5,))
    assert contains(((1.0,), (0.0,)), (0.0,))
    assert not contains(((0.0,), (1.0,)), (1.0000001,))


def test_contains_3d_hand_case():
    tet = ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
    assert contains(tet, (0.2, 0.2, 0.2))
    assert contains(tet, (0.0, 0.5, 0.5))  # on a face
    assert not contains(tet, (0.4, 0.4, 0.4))


@settings(max_examples=150)
@given(st.lists(st.tuples(grid, grid), min_size=3, max_size=3), st.tuples(grid, grid))
def test_contains_2d_matches_oracle(tri, q):
    assert contains(tuple(tri), q) == oracles.hull_contains_exact(tri, q)


@settings(max_examples=75)
@given(
    st.lists(st.tuples(grid, grid, grid), min_size=4, max_size=4),
    st.tuples(grid, grid, grid),
)
def test_contains_3d_matches_oracle(tet, q):
    assert contains(tuple(tet), q) == oracles.hull_contains_exact(tet, q)


@settings(max_examples=60)
@given(
    st.lists(st.tuples(grid,), min_size=2, max_size=2),
    st.tuples(grid,),
)
def test_contains_1d_matches_oracle(seg, q):
    assert contains(tuple(seg), q) == oracles.hull_contains_exact(seg, q)


@settings(max_examples=60)
@given(
    st.lists(st.tuples(grid, grid), min_size=3, max_size=3),
    st.tuples(grid, grid),
    st.permutations(range(3)),
)
def test_contains_vertex_permutation_invariant(tri, q, perm):
    base = contains(tuple(tri), q)
    assert contains(tuple(tri[i] for i in perm), q) == base


def test_query_dimension_mismatch():
    with pytest.raises(InputError):
        contains(((0.0, 0.0), (1.0, 0.0), (0.0, 1.0)), (0.5,))
