"""Exact-sign predicates on binary64 inputs.

Every function returns the true sign (-1, 0, +1) of an algebraic expression
of its floating-point arguments, treating the arguments as exact rationals.
A static floating-point filter decides the common case; anything inside the
filter's error band is re-evaluated in exact rational arithmetic, so the
returned sign is never wrong, only occasionally slower.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

_EPS = 2.0**-53

# Forward error bounds for the filtered expressions, in the style of
# adaptive-precision predicates: |computed - true| <= C * (sum of |terms|).
# _UFLOW is an absolute guard that dominates every rounding error the
# subnormal range can produce, so the bounds stay valid under underflow.
ORIENT2D_BOUND = (3.0 + 16.0 * _EPS) * _EPS
ORIENT3D_BOUND = (7.0 + 56.0 * _EPS) * _EPS
UFLOW_GUARD = 1e-300


def _fsign(x: Fraction) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def orient1d(a: float, b: float) -> int:
    """Sign of b - a.

    Exact without any filter: a nonzero difference of binary64 values is a
    nonzero multiple of the subnormal quantum, which rounding to nearest
    cannot flush to zero or flip.
    """
    d = b - a
    if d > 0.0:
        return 1
    if d < 0.0:
        return -1
    return 0


def orient2d(ax, ay, bx, by, cx, cy) -> int:
    """Sign of the signed area det [[ax-cx, ay-cy], [bx-cx, by-cy]]."""
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    errbound = ORIENT2D_BOUND * (abs(detleft) + abs(detright)) + UFLOW_GUARD
    if det > errbound:
        return 1
    if det < -errbound:
        return -1
    return orient2d_exact(ax, ay, bx, by, cx, cy)


def orient2d_exact(ax, ay, bx, by, cx, cy) -> int:
    ax, ay, bx, by, cx, cy = map(Fraction, (ax, ay, bx, by, cx, cy))
    return _fsign((ax - cx) * (by - cy) - (ay - cy) * (bx - cx))


def orient3d(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz) -> int:
    """Sign of det of rows a-d, b-d, c-d."""
    adx = ax - dx
    bdx = bx - dx
    cdx = cx - dx
    ady = ay - dy
    bdy = by - dy
    cdy = cy - dy
    adz = az - dz
    bdz = bz - dz
    cdz = cz - dz

    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    cdxady = cdx * ady
    adxcdy = adx * cdy
    adxbdy = adx * bdy
    bdxady = bdx * ady

    det = (
        adz * (bdxcdy - cdxbdy)
        + bdz * (cdxady - adxcdy)
        + cdz * (adxbdy - bdxady)
    )
    permanent = (
        (abs(bdxcdy) + abs(cdxbdy)) * abs(adz)
        + (abs(cdxady) + abs(adxcdy)) * abs(bdz)
        + (abs(adxbdy) + abs(bdxady)) * abs(cdz)
    )
    errbound = ORIENT3D_BOUND * permanent + UFLOW_GUARD
    if det > errbound:
        return 1
    if det < -errbound:
        return -1
    return _orient3d_exact(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz)


def _orient3d_exact(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz) -> int:
    ax, ay, az = Fraction(ax), Fraction(ay), Fraction(az)
    bx, by, bz = Fraction(bx), Fraction(by), Fraction(bz)
    cx, cy, cz = Fraction(cx), Fraction(cy), Fraction(cz)
    dx, dy, dz = Fraction(dx), Fraction(dy), Fraction(dz)
    adx, ady, adz = ax - dx, ay - dy, az - dz
    bdx, bdy, bdz = bx - dx, by - dy, bz - dz
    cdx, cdy, cdz = cx - dx, cy - dy, cz - dz
    det = (
        adz * (bdx * cdy - cdx * bdy)
        + bdz * (cdx * ady - adx * cdy)
        + cdz * (adx * bdy - bdx * ady)
    )
    return _fsign(det)


def cross2(ax, ay, bx, by, cx, cy, dx, dy) -> int:
    """Sign of (b - a) x (d - c)."""
    t1 = (bx - ax) * (dy - cy)
    t2 = (by - ay) * (dx - cx)
    det = t1 - t2
    errbound = ORIENT2D_BOUND * (abs(t1) + abs(t2)) + UFLOW_GUARD
    if det > errbound:
        return 1
    if det < -errbound:
        return -1
    ax, ay, bx, by = map(Fraction, (ax, ay, bx, by))
    cx, cy, dx, dy = map(Fraction, (cx, cy, dx, dy))
    return _fsign((bx - ax) * (dy - cy) - (by - ay) * (dx - cx))


def dot2(qx, qy, ax, ay, bx, by) -> int:
    """Sign of (a - q) . (b - q)."""
    t1 = (ax - qx) * (bx - qx)
    t2 = (ay - qy) * (by - qy)
    s = t1 + t2
    errbound = ORIENT2D_BOUND * (abs(t1) + abs(t2)) + UFLOW_GUARD
    if s > errbound:
        return 1
    if s < -errbound:
        return -1
    qx, qy, ax, ay, bx, by = map(Fraction, (qx, qy, ax, ay, bx, by))
    return _fsign((ax - qx) * (bx - qx) + (ay - qy) * (by - qy))


def _filtered_det_sign(rows: list[list[float]]) -> int | None:
    """Filter for k >= 4: cofactor expansion with a permanent error bound.

    Returns the sign if certified, None when the exact path must decide.
    The bound folds in one rounding per matrix entry, per product, and per
    partial sum; the leading constant is deliberately generous.
    """
    k = len(rows)

    def expand(rs: list[list[float]]) -> tuple[float, float]:
        m = len(rs)
        if m == 1:
            return rs[0][0], abs(rs[0][0])
        det = 0.0
        perm = 0.0
        sign = 1.0
        for j in range(m):
            minor = [r[:j] + r[j + 1 :] for r in rs[1:]]
            sub_det, sub_perm = expand(minor)
            det += sign * rs[0][j] * sub_det
            perm += abs(rs[0][j]) * sub_perm
            sign = -sign
        return det, perm

    det, perm = expand(rows)
    coeff = 1.1 * (0.5 * k * (k + 3) + 4.0) * _EPS
    errbound = coeff * perm + UFLOW_GUARD
    if det > errbound:
        return 1
    if det < -errbound:
        return -1
    return None


def _bareiss_sign(m: list[list[int]]) -> int:
    """Sign of the determinant of an integer matrix, fraction-free."""
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for i in range(n):
        pivot_row = next((r for r in range(i, n) if m[r][i] != 0), None)
        if pivot_row is None:
            return 0
        if pivot_row != i:
            m[i], m[pivot_row] = m[pivot_row], m[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = m[i][i]
    return sign * _fsign(Fraction(prev))


def _det_sign_exact(points: Sequence[Sequence[float]]) -> int:
    d = len(points) - 1
    base = [Fraction(x) for x in points[0]]
    rows = [
        [Fraction(points[i + 1][j]) - base[j] for j in range(d)]
        for i in range(d)
    ]
    if d == 1:
        return _fsign(rows[0][0])
    if d == 2:
        return _fsign(rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0])
    if d == 3:
        det = (
            rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
        )
        return _fsign(det)
    scale = 1
    for row in rows:
        for f in row:
            scale = math.lcm(scale, f.denominator)
    ints = [[int(f * scale) for f in row] for row in rows]
    return _bareiss_sign(ints)


def orientation_sign(points: Sequence[Sequence[float]]) -> int:
    """Exact orientation sign of d+1 points in R^d.

    Sign of det of the d x d matrix whose rows are points[i+1] - points[0].
    """
    d = len(points) - 1
    if d == 1:
        return orient1d(points[0][0], points[1][0])
    if d == 2:
        (p0x, p0y), (p1x, p1y), (p2x, p2y) = points
        return orient2d(p1x, p1y, p2x, p2y, p0x, p0y)
    if d == 3:
        p0, p1, p2, p3 = points
        return orient3d(*p1, *p2, *p3, *p0)
    rows = [
        [points[i + 1][j] - points[0][j] for j in range(d)] for i in range(d)
    ]
    filtered = _filtered_det_sign(rows)
    if filtered is not None:
        return filtered
    return _det_sign_exact(points)
