from __future__ import annotations

from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from simpdepth import predicates as pr

import oracles

finite = st.floats(
    min_value=-16.0, max_value=16.0, allow_nan=False, allow_infinity=False
)
# Dyadic grid values collide and align constantly: the torture case for
# filtered predicates, since exact zeros and near-zeros dominate.
grid = st.sampled_from([i / 8 for i in range(-16, 17)])
coord = st.one_of(finite, grid)


def _frac(*vals):
    return tuple(Fraction(v) for v in vals)


@given(coord, coord, coord, coord, coord, coord)
def test_orient2d_matches_exact_oracle(ax, ay, bx, by, cx, cy):
    # orient2d returns sign det [[a-c, b-c]] = oracle orientation of (c, a, b)
    got = pr.orient2d(ax, ay, bx, by, cx, cy)
    assert got == oracles.orient2d_exact(_frac(cx, cy), _frac(ax, ay), _frac(bx, by))


@given(coord, coord, coord, coord, coord, coord)
def test_orient2d_antisymmetry(ax, ay, bx, by, cx, cy):
    s = pr.orient2d(ax, ay, bx, by, cx, cy)
    assert pr.orient2d(bx, by, ax, ay, cx, cy) == -s


@given(grid, grid, grid, grid, grid, grid, grid, grid)
def test_orient2d_translation_invariance(ax, ay, bx, by, cx, cy, tx, ty):
    # dyadic inputs and shifts of this size are exact in binary64
    s = pr.orient2d(ax, ay, bx, by, cx, cy)
    assert pr.orient2d(ax + tx, ay + ty, bx + tx, by + ty, cx + tx, cy + ty) == s


@given(grid, grid, grid, grid, grid, grid, st.sampled_from([0.25, 0.5, 2.0, 4.0]))
def test_orient2d_scale_equivariance(ax, ay, bx, by, cx, cy, f):
    # powers of two scale exactly and preserve the sign
    s = pr.orient2d(ax, ay, bx, by, cx, cy)
    assert pr.orient2d(f * ax, f * ay, f * bx, f * by, f * cx, f * cy) == s


def test_orient1d_exact():
    assert pr.orient1d(1.0, 2.0) == 1
    assert pr.orient1d(2.0, 1.0) == -1
    assert pr.orient1d(0.3, 0.1 + 0.2) == 1  # 0.1+0.2 > 0.3 in binary64
    assert pr.orient1d(5e-324, 5e-324) == 0


def test_orient2d_near_degenerate_torture():
    # third point within a few ulps of the line through the first two
    base = 1.0
    for k in (-3, -2, -1, 0, 1, 2, 3):
        cy = base + k * np.spacing(base)
        got = pr.orient2d(0.0, 0.0, 2.0, 2.0, base, cy)
        exact = oracles.orient2d_exact(
            _frac(base, cy), _frac(0.0, 0.0), _frac(2.0, 2.0)
        )
        assert got == exact


def test_orient2d_subnormal_inputs():
    tiny = 5e-324
    assert pr.orient2d(0.0, 0.0, tiny, 0.0, 0.0, tiny) == pr.orient2d_exact(
        0.0, 0.0, tiny, 0.0, 0.0, tiny
    )


@given(st.lists(st.tuples(coord, coord, coord), min_size=4, max_size=4))
def test_orient3d_matches_fraction_determinant(pts):
    a, b, c, d = pts
    got = pr.orient3d(*a, *b, *c, *d)
    rows = [[Fraction(p[i]) - Fraction(d[i]) for i in range(3)] for p in (a, b, c)]
    assert got == oracles.det_sign_exact(rows)


@given(st.integers(min_value=1, max_value=5), st.data())
def test_orientation_sign_matches_oracle(d, data):
    pts = [
        tuple(data.draw(coord, label=f"p{i}[{j}]") for j in range(d))
        for i in range(d + 1)
    ]
    assert pr.orientation_sign(pts) == oracles.orientation_sign_exact(pts)


def test_orientation_sign_permutation_parity():
    pts = [
        (0.0, 0.0, 0.0, 0.0),
        (1.0, 0.0, 0.0, 0.0),
        (0.0, 1.0, 0.0, 0.0),
        (0.0, 0.0, 1.0, 0.0),
        (0.0, 0.0, 0.0, 1.0),
    ]
    s = pr.orientation_sign(pts)
    assert s == 1
    assert pr.orientation_sign([pts[1], pts[0]] + pts[2:]) == -s


@settings(max_examples=50)
@given(st.integers(min_value=4, max_value=6), st.randoms(use_true_random=False))
def test_high_dim_affinely_dependent_is_zero(d, rnd):
    pts = [[rnd.uniform(-4, 4) for _ in range(d)] for _ in range(d)]
    lam = Fraction(rnd.choice([1, 1, 3]), 4)
    dep = [
        float(Fraction(a) + lam * (Fraction(b) - Fraction(a)))
        for a, b in zip(pts[0], pts[1])
    ]
    exact = [Fraction(a) + lam * (Fraction(b) - Fraction(a)) for a, b in zip(pts[0], pts[1])]
    if all(Fraction(f) == e for f, e in zip(dep, exact)):
        assert pr.orientation_sign(pts + [dep]) == 0
    else:
        assert pr.orientation_sign(pts + [dep]) == oracles.orientation_sign_exact(
            pts + [dep]
        )


@given(coord, coord, coord, coord, coord, coord, coord, coord)
def test_cross2_matches_fractions(ax, ay, bx, by, cx, cy, dx, dy):
    got = pr.cross2(ax, ay, bx, by, cx, cy, dx, dy)
    v = (Fraction(bx) - Fraction(ax)) * (Fraction(dy) - Fraction(cy)) - (
        Fraction(by) - Fraction(ay)
    ) * (Fraction(dx) - Fraction(cx))
    assert got == (v > 0) - (v < 0)


@given(coord, coord, coord, coord, coord, coord)
def test_dot2_matches_fractions(qx, qy, ax, ay, bx, by):
    got = pr.dot2(qx, qy, ax, ay, bx, by)
    v = (Fraction(ax) - Fraction(qx)) * (Fraction(bx) - Fraction(qx)) + (
        Fraction(ay) - Fraction(qy)
    ) * (Fraction(by) - Fraction(qy))
    assert got == (v > 0) - (v < 0)
