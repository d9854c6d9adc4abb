"""Compiled counting kernels.

Each kernel evaluates floating-point filters only.  Items whose sign the
filter cannot certify are reported back through a flag buffer and resolved
by the caller in exact arithmetic, so kernel speed never costs correctness.

The flag buffers are caller-allocated; kernels return the number of items
they would have flagged.  When that number exceeds the buffer capacity the
caller re-allocates and re-runs (counts of certain items are unaffected).
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .predicates import ORIENT2D_BOUND, ORIENT3D_BOUND, UFLOW_GUARD

UNSURE = np.int8(99)


@njit(cache=True, inline="always")
def _o2d(ax, ay, bx, by, cx, cy):
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    errbound = ORIENT2D_BOUND * (abs(detleft) + abs(detright)) + UFLOW_GUARD
    if det > errbound:
        return np.int8(1)
    if det < -errbound:
        return np.int8(-1)
    return UNSURE


@njit(cache=True, inline="always")
def _o3d(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz):
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
        return np.int8(1)
    if det < -errbound:
        return np.int8(-1)
    return UNSURE


@njit(cache=True, nogil=True)
def mono_after_kernel(pts, qx, qy, flags, cap):
    """Count certainly-after pairs for the planar monochromatic sweep.

    after[i] counts j with cross(p_i - q, p_j - q) certainly positive.
    Pairs i < j whose cross sign is uncertain or zero land in flags.
    """
    n = pts.shape[0]
    after = np.zeros(n, dtype=np.int64)
    nflag = 0
    for i in range(n):
        for j in range(i + 1, n):
            s = _o2d(pts[i, 0], pts[i, 1], pts[j, 0], pts[j, 1], qx, qy)
            if s == 1:
                after[i] += 1
            elif s == -1:
                after[j] += 1
            else:
                if nflag < cap:
                    flags[nflag, 0] = i
                    flags[nflag, 1] = j
                nflag += 1
    return after, nflag


@njit(cache=True, nogil=True)
def colorful_count_2d_kernel(c0, c1, c2, qx, qy, flags, cap):
    """Count rainbow triangles certainly containing (qx, qy), closed."""
    count = 0
    nflag = 0
    for i in range(c0.shape[0]):
        ax = c0[i, 0]
        ay = c0[i, 1]
        for j in range(c1.shape[0]):
            bx = c1[j, 0]
            by = c1[j, 1]
            for k in range(c2.shape[0]):
                cx = c2[k, 0]
                cy = c2[k, 1]
                s = _o2d(ax, ay, bx, by, cx, cy)
                ok = 0
                if s == 1 or s == -1:
                    s1 = _o2d(qx, qy, bx, by, cx, cy)
                    s2 = _o2d(ax, ay, qx, qy, cx, cy)
                    s3 = _o2d(ax, ay, bx, by, qx, qy)
                    if s1 != UNSURE and s2 != UNSURE and s3 != UNSURE:
                        ok = 1
                        if s1 == -s or s2 == -s or s3 == -s:
                            ok = -1
                if ok == 1:
                    count += 1
                elif ok == 0:
                    if nflag < cap:
                        flags[nflag, 0] = i
                        flags[nflag, 1] = j
                        flags[nflag, 2] = k
                    nflag += 1
    return count, nflag


@njit(cache=True, nogil=True)
def colorful_count_3d_kernel(c0, c1, c2, c3, q, flags, cap):
    """Count rainbow tetrahedra certainly containing q, closed."""
    count = 0
    nflag = 0
    qx = q[0]
    qy = q[1]
    qz = q[2]
    for i in range(c0.shape[0]):
        for j in range(c1.shape[0]):
            for k in range(c2.shape[0]):
                for l in range(c3.shape[0]):
                    ax, ay, az = c0[i, 0], c0[i, 1], c0[i, 2]
                    bx, by, bz = c1[j, 0], c1[j, 1], c1[j, 2]
                    cx, cy, cz = c2[k, 0], c2[k, 1], c2[k, 2]
                    dx, dy, dz = c3[l, 0], c3[l, 1], c3[l, 2]
                    s = _o3d(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz)
                    ok = 0
                    if s == 1 or s == -1:
                        s1 = _o3d(qx, qy, qz, bx, by, bz, cx, cy, cz, dx, dy, dz)
                        s2 = _o3d(ax, ay, az, qx, qy, qz, cx, cy, cz, dx, dy, dz)
                        s3 = _o3d(ax, ay, az, bx, by, bz, qx, qy, qz, dx, dy, dz)
                        s4 = _o3d(ax, ay, az, bx, by, bz, cx, cy, cz, qx, qy, qz)
                        if (
                            s1 != UNSURE
                            and s2 != UNSURE
                            and s3 != UNSURE
                            and s4 != UNSURE
                        ):
                            ok = 1
                            if s1 == -s or s2 == -s or s3 == -s or s4 == -s:
                                ok = -1
                    if ok == 1:
                        count += 1
                    elif ok == 0:
                        if nflag < cap:
                            flags[nflag, 0] = i
                            flags[nflag, 1] = j
                            flags[nflag, 2] = k
                            flags[nflag, 3] = l
                        nflag += 1
    return count, nflag


@njit(cache=True, nogil=True)
def mc_hits_1d_kernel(samples, qx, flags, cap):
    """Closed-interval hits for d=1 Monte Carlo trials: (m, 2, 1) samples."""
    hits = 0
    nflag = 0
    m = samples.shape[0]
    for t in range(m):
        a = samples[t, 0, 0]
        b = samples[t, 1, 0]
        t1 = (a - qx) * (b - qx)
        errbound = ORIENT2D_BOUND * abs(t1) + UFLOW_GUARD
        if t1 < -errbound:
            hits += 1
        elif t1 <= errbound:
            if nflag < cap:
                flags[nflag] = t
            nflag += 1
    return hits, nflag


@njit(cache=True, nogil=True)
def mc_hits_2d_kernel(samples, qx, qy, flags, cap):
    """Closed-triangle hits for d=2 Monte Carlo trials: (m, 3, 2) samples."""
    hits = 0
    nflag = 0
    m = samples.shape[0]
    for t in range(m):
        ax, ay = samples[t, 0, 0], samples[t, 0, 1]
        bx, by = samples[t, 1, 0], samples[t, 1, 1]
        cx, cy = samples[t, 2, 0], samples[t, 2, 1]
        s = _o2d(ax, ay, bx, by, cx, cy)
        ok = 0
        if s == 1 or s == -1:
            s1 = _o2d(qx, qy, bx, by, cx, cy)
            s2 = _o2d(ax, ay, qx, qy, cx, cy)
            s3 = _o2d(ax, ay, bx, by, qx, qy)
            if s1 != UNSURE and s2 != UNSURE and s3 != UNSURE:
                ok = 1
                if s1 == -s or s2 == -s or s3 == -s:
                    ok = -1
        if ok == 1:
            hits += 1
        elif ok == 0:
            if nflag < cap:
                flags[nflag] = t
            nflag += 1
    return hits, nflag


@njit(cache=True, nogil=True)
def mc_hits_3d_kernel(samples, qx, qy, qz, flags, cap):
    """Closed-tetrahedron hits for d=3 Monte Carlo trials: (m, 4, 3)."""
    hits = 0
    nflag = 0
    m = samples.shape[0]
    for t in range(m):
        ax, ay, az = samples[t, 0, 0], samples[t, 0, 1], samples[t, 0, 2]
        bx, by, bz = samples[t, 1, 0], samples[t, 1, 1], samples[t, 1, 2]
        cx, cy, cz = samples[t, 2, 0], samples[t, 2, 1], samples[t, 2, 2]
        dx, dy, dz = samples[t, 3, 0], samples[t, 3, 1], samples[t, 3, 2]
        s = _o3d(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz)
        ok = 0
        if s == 1 or s == -1:
            s1 = _o3d(qx, qy, qz, bx, by, bz, cx, cy, cz, dx, dy, dz)
            s2 = _o3d(ax, ay, az, qx, qy, qz, cx, cy, cz, dx, dy, dz)
            s3 = _o3d(ax, ay, az, bx, by, bz, qx, qy, qz, dx, dy, dz)
            s4 = _o3d(ax, ay, az, bx, by, bz, cx, cy, cz, qx, qy, qz)
            if s1 != UNSURE and s2 != UNSURE and s3 != UNSURE and s4 != UNSURE:
                ok = 1
                if s1 == -s or s2 == -s or s3 == -s or s4 == -s:
                    ok = -1
        if ok == 1:
            hits += 1
        elif ok == 0:
            if nflag < cap:
                flags[nflag] = t
            nflag += 1
    return hits, nflag
