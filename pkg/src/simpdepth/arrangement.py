"""Certified planar maximization of closed colorful depth.

The depth function is piecewise constant on the arrangement of lines
through pairs of differently-colored data coordinates, and under the
closed-hull convention its global maximum is attained either at a data
point or at a proper crossing of two such lines (an arrangement vertex is
at least as deep as every face it touches).  This module therefore:

  1. deduplicates coordinates and tracks per-class multiplicities, so
     coinciding classes and repeated points are handled exactly;
  2. tabulates every orientation sign among distinct coordinates once
     (filtered floats, exact fallback), after which the whole search is
     integer table arithmetic;
  3. sweeps every line: walking the crossings in parameter order while
     maintaining the count of rainbow triangles that cover the moving
     point, emitting a candidate value at each proper crossing;
  4. evaluates every data coordinate directly.

Each line's bookkeeping is validated by an order-independent checksum
(total signed flips along the line must cancel).  Crossing parameters are
ordered as floats carrying a rigorous forward error bound; any line whose
crossings cannot be ordered reliably (including genuinely concurrent
lines) is re-swept with exact rational parameters, so the reported
maximum is certified.

Requires general position of the distinct coordinates: no three collinear.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from . import predicates
from ._kernels import UNSURE, _o2d
from .predicates import ORIENT2D_BOUND, UFLOW_GUARD
from .configuration import ColoredConfiguration
from .errors import CertificationError, DegeneracyError, InputError

MAX_UNIQUE_COORDS = 320


@njit(cache=True)
def _fill_t3_kernel(u, t3, flags, cap):
    m = u.shape[0]
    nflag = 0
    for a in range(m):
        for b in range(a + 1, m):
            for c in range(b + 1, m):
                s = _o2d(u[a, 0], u[a, 1], u[b, 0], u[b, 1], u[c, 0], u[c, 1])
                if s == UNSURE:
                    if nflag < cap:
                        flags[nflag, 0] = a
                        flags[nflag, 1] = b
                        flags[nflag, 2] = c
                    nflag += 1
                else:
                    t3[a, b, c] = s
                    t3[b, c, a] = s
                    t3[c, a, b] = s
                    t3[a, c, b] = -s
                    t3[b, a, c] = -s
                    t3[c, b, a] = -s
    return nflag


@njit(cache=True)
def _fill_sig_kernel(u, la, lb, sig, flags, cap):
    nlines = la.shape[0]
    nflag = 0
    for l1 in range(nlines):
        a1x = u[la[l1], 0]
        a1y = u[la[l1], 1]
        u1x = u[lb[l1], 0] - a1x
        u1y = u[lb[l1], 1] - a1y
        for l2 in range(l1 + 1, nlines):
            v2x = u[lb[l2], 0] - u[la[l2], 0]
            v2y = u[lb[l2], 1] - u[la[l2], 1]
            t1 = v2x * u1y
            t2 = v2y * u1x
            det = t1 - t2
            err = ORIENT2D_BOUND * (abs(t1) + abs(t2)) + UFLOW_GUARD
            if det > err:
                s = np.int8(1)
            elif det < -err:
                s = np.int8(-1)
            else:
                if nflag < cap:
                    flags[nflag, 0] = l1
                    flags[nflag, 1] = l2
                nflag += 1
                continue
            sig[l1, l2] = s
            sig[l2, l1] = -s
    return nflag


@njit(cache=True, inline="always")
def _cw3(w, a, b, c):
    return (
        w[a, 0] * (w[b, 1] * w[c, 2] + w[b, 2] * w[c, 1])
        + w[a, 1] * (w[b, 0] * w[c, 2] + w[b, 2] * w[c, 0])
        + w[a, 2] * (w[b, 0] * w[c, 1] + w[b, 1] * w[c, 0])
    )


@njit(cache=True)
def _build_triples_kernel(w, t3, ta, tb, tc, tw):
    m = w.shape[0]
    cnt = 0
    for a in range(m):
        for b in range(a + 1, m):
            for c in range(b + 1, m):
                cw = _cw3(w, a, b, c)
                if cw == 0:
                    continue
                ta[cnt] = a
                tb[cnt] = b
                tc[cnt] = c
                tw[cnt] = cw
                cnt += 1
    return cnt


@njit(cache=True)
def _datapoint_depths_kernel(w, t3, ta, tb, tc, tw):
    m = w.shape[0]
    ntri = ta.shape[0]
    depth = np.zeros(m, dtype=np.int64)
    for i in range(m):
        acc = np.int64(0)
        for t in range(ntri):
            a = ta[t]
            b = tb[t]
            c = tc[t]
            s = t3[a, b, c]
            if (
                t3[i, b, c] == -s
                or t3[a, i, c] == -s
                or t3[a, b, i] == -s
            ):
                continue
            acc += tw[t]
        wi0 = w[i, 0]
        wi1 = w[i, 1]
        wi2 = w[i, 2]
        acc += wi0 * wi1 * wi2
        for x in range(m):
            if x == i:
                continue
            acc += w[x, 0] * wi1 * wi2 + w[x, 1] * wi0 * wi2 + w[x, 2] * wi0 * wi1
            acc += wi0 * w[x, 1] * w[x, 2] + wi1 * w[x, 0] * w[x, 2] + wi2 * w[x, 0] * w[x, 1]
        depth[i] = acc
    return depth


@njit(cache=True, inline="always")
def _cone_jump(t3, w, m, anchor, other, flip):
    """Signed change of the off-line triangle count when the sweep point
    passes through the data coordinate `anchor` along the line toward
    `other` (flip=+1) or away from it (flip=-1)."""
    jump = np.int64(0)
    for r in range(m):
        if r == anchor or r == other:
            continue
        c_ru = flip * t3[r, other, anchor]
        for e in range(r + 1, m):
            if e == anchor or e == other:
                continue
            cw = _cw3(w, anchor, r, e)
            if cw == 0:
                continue
            c_eu = flip * t3[e, other, anchor]
            s_re = t3[r, e, anchor]
            in_fwd = c_ru == s_re and c_eu == -s_re
            in_bwd = -c_ru == s_re and -c_eu == -s_re
            if in_fwd and not in_bwd:
                jump += cw
            elif in_bwd and not in_fwd:
                jump -= cw
    return jump


_EPS16 = 16.0 * 2.0**-53


@njit(cache=True)
def _sweep_kernel(u, w, la, lb, nplus, nminus, nzero_eff, fterm, sides, sig, t3, susp):
    nlines = la.shape[0]
    m = u.shape[0]
    best_val = np.int64(-1)
    best_x = 0.0
    best_y = 0.0
    total_events = np.int64(0)
    checksum_bad = 0
    ts = np.empty(nlines, dtype=np.float64)
    te = np.empty(nlines, dtype=np.float64)
    dd = np.empty(nlines, dtype=np.int64)
    nn = np.empty(nlines, dtype=np.int64)
    rg = np.empty(nlines, dtype=np.int8)
    for l in range(nlines):
        pa = la[l]
        pb = lb[l]
        px = u[pa, 0]
        py = u[pa, 1]
        ux = u[pb, 0] - px
        uy = u[pb, 1] - py
        cnt = 0
        bad_param = False
        for mm in range(nlines):
            if mm == l:
                continue
            ca = la[mm]
            cb = lb[mm]
            if ca == pa or ca == pb or cb == pa or cb == pb:
                continue
            if sides[l, ca] * sides[l, cb] != -1:
                continue
            sg = sig[l, mm]
            if sg == 0:
                continue
            if sg > 0:
                nnew = nplus[mm]
                nold = nminus[mm]
            else:
                nnew = nminus[mm]
                nold = nplus[mm]
            sgn_t = sides[mm, pa] * (-sg)
            sgn_s = sides[mm, pb] * sg
            if sgn_t < 0:
                region = 1
            elif sgn_s < 0:
                region = 3
            else:
                region = 2
            cx = u[ca, 0]
            cy = u[ca, 1]
            vx = u[cb, 0] - cx
            vy = u[cb, 1] - cy
            den = ux * vy - uy * vx
            if den == 0.0:
                bad_param = True
                break
            tnum = (cx - px) * vy - (cy - py) * vx
            t = tnum / den
            if not np.isfinite(t):
                bad_param = True
                break
            pm = abs((cx - px) * vy) + abs((cy - py) * vx)
            pd = abs(ux * vy) + abs(uy * vx)
            ts[cnt] = t
            te[cnt] = _EPS16 * (pm + abs(t) * pd) / abs(den)
            dd[cnt] = nnew - nold
            nn[cnt] = nnew + nzero_eff[mm]
            rg[cnt] = region
            cnt += 1
        if bad_param:
            susp[l] = True
            continue
        order = np.argsort(ts[:cnt])
        ambiguous = False
        for oi_idx in range(cnt - 1):
            o1 = order[oi_idx]
            o2 = order[oi_idx + 1]
            if ts[o2] - ts[o1] <= te[o1] + te[o2]:
                ambiguous = True
                break
        if ambiguous:
            susp[l] = True
            continue
        total_events += cnt
        jump0 = _cone_jump(t3, w, m, pa, pb, 1)
        jump1 = _cone_jump(t3, w, m, pb, pa, -1)
        s_run = np.int64(0)
        for oi_idx in range(cnt):
            oi = order[oi_idx]
            if rg[oi] != 1:
                continue
            cand = s_run + nn[oi]
            if cand > best_val or (
                cand == best_val
                and _lex_less(px + ts[oi] * ux, py + ts[oi] * uy, best_x, best_y)
            ):
                best_val = cand
                best_x = px + ts[oi] * ux
                best_y = py + ts[oi] * uy
            s_run += dd[oi]
        s_run += jump0
        for oi_idx in range(cnt):
            oi = order[oi_idx]
            if rg[oi] != 2:
                continue
            cand = s_run + nn[oi] + fterm[l]
            if cand > best_val or (
                cand == best_val
                and _lex_less(px + ts[oi] * ux, py + ts[oi] * uy, best_x, best_y)
            ):
                best_val = cand
                best_x = px + ts[oi] * ux
                best_y = py + ts[oi] * uy
            s_run += dd[oi]
        s_before_end = s_run
        s_run = np.int64(0)
        for oi_idx in range(cnt - 1, -1, -1):
            oi = order[oi_idx]
            if rg[oi] != 3:
                continue
            cand = s_run + nn[oi] - dd[oi]
            if cand > best_val or (
                cand == best_val
                and _lex_less(px + ts[oi] * ux, py + ts[oi] * uy, best_x, best_y)
            ):
                best_val = cand
                best_x = px + ts[oi] * ux
                best_y = py + ts[oi] * uy
            s_run -= dd[oi]
        if s_before_end + jump1 != s_run:
            checksum_bad += 1
    return best_val, best_x, best_y, total_events, checksum_bad


@njit(cache=True, inline="always")
def _lex_less(x1, y1, x2, y2):
    if x1 < x2:
        return True
    if x1 > x2:
        return False
    return y1 < y2


def _cone_jump_py(t3, w, m, anchor, other, flip):
    jump = 0
    for r in range(m):
        if r == anchor or r == other:
            continue
        c_ru = flip * int(t3[r, other, anchor])
        for e in range(r + 1, m):
            if e == anchor or e == other:
                continue
            cw = _cw3(w, anchor, r, e)
            if cw == 0:
                continue
            c_eu = flip * int(t3[e, other, anchor])
            s_re = int(t3[r, e, anchor])
            in_fwd = c_ru == s_re and c_eu == -s_re
            in_bwd = -c_ru == s_re and -c_eu == -s_re
            if in_fwd and not in_bwd:
                jump += int(cw)
            elif in_bwd and not in_fwd:
                jump -= int(cw)
    return jump


def _exact_line_best(l, u, wf, la, lb, sides, sig, nplus, nminus, nzero_eff, fterm, t3):
    """Candidates of one swept line with exact rational crossing parameters.

    Used when the float parameters of two crossings on the line are too
    close to order reliably.  Coincident crossings (three concurrent lines)
    are merged into one candidate so its value counts every family meeting
    at the shared point.  Returns (best_value, best_x, best_y, n_events).
    """
    from fractions import Fraction

    nlines = la.shape[0]
    m = u.shape[0]
    pa = int(la[l])
    pb = int(lb[l])
    px = Fraction(float(u[pa, 0]))
    py = Fraction(float(u[pa, 1]))
    ux = Fraction(float(u[pb, 0])) - px
    uy = Fraction(float(u[pb, 1])) - py
    events = []
    for mm in range(nlines):
        if mm == l:
            continue
        ca = int(la[mm])
        cb = int(lb[mm])
        if ca == pa or ca == pb or cb == pa or cb == pb:
            continue
        if int(sides[l, ca]) * int(sides[l, cb]) != -1:
            continue
        sg = int(sig[l, mm])
        if sg == 0:
            continue
        if sg > 0:
            nnew, nold = int(nplus[mm]), int(nminus[mm])
        else:
            nnew, nold = int(nminus[mm]), int(nplus[mm])
        sgn_t = int(sides[mm, pa]) * (-sg)
        sgn_s = int(sides[mm, pb]) * sg
        region = 1 if sgn_t < 0 else (3 if sgn_s < 0 else 2)
        cx = Fraction(float(u[ca, 0]))
        cy = Fraction(float(u[ca, 1]))
        vx = Fraction(float(u[cb, 0])) - cx
        vy = Fraction(float(u[cb, 1])) - cy
        den = ux * vy - uy * vx
        t = ((cx - px) * vy - (cy - py) * vx) / den
        events.append((t, region, nnew - nold, nnew + int(nzero_eff[mm])))
    events.sort(key=lambda ev: ev[0])
    jump0 = _cone_jump_py(t3, wf, m, pa, pb, 1)
    jump1 = _cone_jump_py(t3, wf, m, pb, pa, -1)
    best_val = -1
    best_x = best_y = 0.0
    s_run = 0
    passed0 = passed1 = False
    i = 0
    nev = len(events)
    while i < nev:
        j = i
        while j < nev and events[j][0] == events[i][0]:
            j += 1
        t = events[i][0]
        region = events[i][1]
        if not passed0 and region != 1:
            s_run += jump0
            passed0 = True
        if not passed1 and region == 3:
            s_run += jump1
            passed1 = True
        group_nn = sum(ev[3] for ev in events[i:j])
        cand = s_run + group_nn + (int(fterm[l]) if region == 2 else 0)
        x = float(px + t * ux)
        y = float(py + t * uy)
        if cand > best_val or (cand == best_val and (x, y) < (best_x, best_y)):
            best_val = cand
            best_x = x
            best_y = y
        s_run += sum(ev[2] for ev in events[i:j])
        i = j
    if not passed0:
        s_run += jump0
    if not passed1:
        s_run += jump1
    if s_run != 0:
        raise CertificationError(
            "exact line sweep failed its flip checksum; this indicates an "
            "internal bookkeeping error"
        )
    return best_val, best_x, best_y, nev


def _unique_with_weights(cfg: ColoredConfiguration):
    allpts = cfg.all_points()
    u, inverse = np.unique(allpts, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    m = u.shape[0]
    w = np.zeros((m, 3), dtype=np.int64)
    offset = 0
    for k, cls in enumerate(cfg.classes):
        n = cls.shape[0]
        np.add.at(w[:, k], inverse[offset : offset + n], 1)
        offset += n
    return u, w


def _orientation_table(u: np.ndarray) -> np.ndarray:
    m = u.shape[0]
    t3 = np.zeros((m, m, m), dtype=np.int8)
    cap = 4096
    while True:
        flags = np.empty((cap, 3), dtype=np.int64)
        nflag = _fill_t3_kernel(u, t3, flags, cap)
        if nflag <= cap:
            break
        cap = nflag
    degenerate = None
    for a, b, c in flags[:nflag]:
        s = predicates.orient2d_exact(
            u[a, 0], u[a, 1], u[b, 0], u[b, 1], u[c, 0], u[c, 1]
        )
        if s == 0 and degenerate is None:
            degenerate = (int(a), int(b), int(c))
        t3[a, b, c] = t3[b, c, a] = t3[c, a, b] = s
        t3[a, c, b] = t3[b, a, c] = t3[c, b, a] = -s
    if degenerate is not None:
        raise DegeneracyError(
            "three distinct coordinates are collinear "
            f"(unique indices {degenerate}); perturb the input or use a "
            "heuristic search strategy"
        )
    return t3


def _sig_table(u, la, lb):
    nlines = la.shape[0]
    sig = np.zeros((nlines, nlines), dtype=np.int8)
    cap = 4096
    while True:
        flags = np.empty((cap, 2), dtype=np.int64)
        nflag = _fill_sig_kernel(u, la, lb, sig, flags, cap)
        if nflag <= cap:
            break
        cap = nflag
    for l1, l2 in flags[:nflag]:
        s = predicates.cross2(
            u[la[l2], 0],
            u[la[l2], 1],
            u[lb[l2], 0],
            u[lb[l2], 1],
            u[la[l1], 0],
            u[la[l1], 1],
            u[lb[l1], 0],
            u[lb[l1], 1],
        )
        sig[l1, l2] = s
        sig[l2, l1] = -s
    return sig


def certified_max_2d(cfg: ColoredConfiguration):
    """Certified global maximum of closed colorful depth in the plane.

    Returns (max_count, best_event, best_data, candidates_evaluated) where
    best_event is (count, (x, y)) over proper line crossings (count -1 when
    there are none) and best_data is (count, (x, y)) over data coordinates.
    """
    if cfg.dim != 2:
        raise InputError("certified_max_2d requires a planar configuration")
    u, w = _unique_with_weights(cfg)
    m = u.shape[0]
    if m > MAX_UNIQUE_COORDS:
        raise InputError(
            f"{m} distinct coordinates exceed the arrangement search cap "
            f"({MAX_UNIQUE_COORDS}); use rainbow-centroids or grid-refine"
        )
    t3 = _orientation_table(u)

    ia, ib = np.triu_indices(m, k=1)
    wa = w[ia]
    wb = w[ib]
    pw = np.stack(
        [
            wa[:, 1] * wb[:, 2] + wa[:, 2] * wb[:, 1],
            wa[:, 0] * wb[:, 2] + wa[:, 2] * wb[:, 0],
            wa[:, 0] * wb[:, 1] + wa[:, 1] * wb[:, 0],
        ],
        axis=1,
    )
    keep = pw.any(axis=1)
    la = ia[keep].astype(np.int32)
    lb = ib[keep].astype(np.int32)
    pw = pw[keep]
    nlines = la.shape[0]

    # Side of every coordinate with respect to every kept line.
    sides = t3[la[:, None], lb[:, None], np.arange(m)[None, :]]
    plus_mask = sides == 1
    minus_mask = sides == -1
    zero_mask = sides == 0
    # Distinct-coordinate collinearity is excluded above, so the only zero
    # sides belong to the line's own endpoints.
    if int(zero_mask.sum()) != 2 * nlines:
        raise DegeneracyError("unexpected collinear coordinate on a data line")

    wf = w.astype(np.int64)
    splus = plus_mask.astype(np.int64) @ wf
    sminus = minus_mask.astype(np.int64) @ wf
    nplus = (pw * splus).sum(axis=1)
    nminus = (pw * sminus).sum(axis=1)
    # Exact assignment counts (inclusion-exclusion, so a coordinate carrying
    # weight in two classes is never counted once per pair designation):
    # nzero_eff[l] = tuples whose image is exactly the line's endpoint pair,
    # fterm[l]     = tuples whose image includes both endpoints.
    nzero_eff = (
        np.prod(wf[la] + wf[lb], axis=1)
        - np.prod(wf[la], axis=1)
        - np.prod(wf[lb], axis=1)
    )
    sizes = np.array(cfg.class_sizes, dtype=np.int64)
    fterm = (
        int(sizes.prod())
        - np.prod(sizes[None, :] - wf[la], axis=1)
        - np.prod(sizes[None, :] - wf[lb], axis=1)
        + np.prod(sizes[None, :] - wf[la] - wf[lb], axis=1)
    )

    sig = _sig_table(u, la, lb)

    ncand_tri = int(m * (m - 1) * (m - 2) // 6)
    ta = np.empty(ncand_tri, dtype=np.int32)
    tb = np.empty(ncand_tri, dtype=np.int32)
    tc = np.empty(ncand_tri, dtype=np.int32)
    tw = np.empty(ncand_tri, dtype=np.int64)
    ntri = _build_triples_kernel(wf, t3, ta, tb, tc, tw)
    depths = _datapoint_depths_kernel(
        wf, t3, ta[:ntri], tb[:ntri], tc[:ntri], tw[:ntri]
    )

    susp = np.zeros(nlines, dtype=np.bool_)
    best_val, best_x, best_y, total_events, checksum_bad = _sweep_kernel(
        u, wf, la, lb, nplus, nminus, nzero_eff, fterm, sides, sig, t3, susp
    )
    if checksum_bad:
        raise CertificationError(
            "sweep bookkeeping failed its flip checksum; this indicates an "
            "internal bookkeeping error"
        )
    best_val = int(best_val)
    best_x = float(best_x)
    best_y = float(best_y)
    for l in np.flatnonzero(susp):
        val, x, y, nev = _exact_line_best(
            int(l), u, wf, la, lb, sides, sig, nplus, nminus, nzero_eff, fterm, t3
        )
        total_events += nev
        if val > best_val or (val == best_val and (x, y) < (best_x, best_y)):
            best_val = val
            best_x = x
            best_y = y

    # np.unique sorts rows lexicographically, so the first argmax is the
    # lexicographically smallest maximizing coordinate.
    best_data_idx = int(np.argmax(depths))
    data_count = int(depths[best_data_idx])
    data_point = (float(u[best_data_idx, 0]), float(u[best_data_idx, 1]))
    event = (int(best_val), (float(best_x), float(best_y)))
    max_count = max(int(best_val), data_count)
    candidates = int(total_events) + m
    return max_count, event, (data_count, data_point), candidates
