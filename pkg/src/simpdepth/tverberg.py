"""Greedy extraction of vertex-disjoint rainbow simplices over a deep point.

If a point is covered by a fraction p of all rainbow simplices from classes
of size N, then repeatedly taking any covering simplex and discarding its
vertices succeeds r times as long as p*N^(d+1) exceeds the number of
simplices the removals can destroy, (d+1)(r-1)N^d.  That counting argument
gives the class size (d+1)(r-1)(d+1)!+1 sufficient for r parts at the
guaranteed depth 1/(d+1)!, alongside the asymptotic threshold
r / (1 - (1 - p)^(1/(d+1))) for covering a p-fraction with r disjoint
simplices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from numba import njit

from ._kernels import UNSURE, _o2d
from .configuration import ColoredConfiguration
from .errors import CertificationError, ExtractionExhausted, InputError
from .geometry import Point, as_point, contains
from .selection import bound, find_deep_point


def asymptotic_T(r: int, d: int) -> float:
    """Class-size scale at which r disjoint covering simplices emerge,
    r / (1 - (1 - p)^(1/(d+1))) with p = 1/(d+1)!."""
    r = int(r)
    d = int(d)
    if r < 1 or d < 1:
        raise InputError("need r >= 1 and d >= 1")
    p = 1.0 / math.factorial(d + 1)
    return r / -math.expm1(math.log1p(-p) / (d + 1))


def greedy_class_size(r: int, d: int) -> int:
    """Smallest class size with a provable greedy guarantee,
    (d+1)(r-1)(d+1)! + 1."""
    r = int(r)
    d = int(d)
    if r < 1 or d < 1:
        raise InputError("need r >= 1 and d >= 1")
    return (d + 1) * (r - 1) * math.factorial(d + 1) + 1


@dataclass(frozen=True)
class TverbergPart:
    """One rainbow simplex: index i into class k gives vertex k."""

    indices: tuple[int, ...]
    vertices: tuple[Point, ...]


@dataclass(frozen=True)
class TverbergCertificate:
    """Vertex-disjoint rainbow simplices whose closed hulls share `witness`.

    ``guaranteed`` records whether the counting argument proved success in
    advance (class sizes >= greedy_class_size and witness fraction >= the
    general bound); ``depth_fraction`` is the witness's exact fraction.
    """

    witness: Point
    parts: tuple[TverbergPart, ...]
    guaranteed: bool
    depth_fraction: Fraction


@njit(cache=True)
def _scan2d_kernel(c0, c1, c2, m0, m1, m2, qx, qy, flags, cap):
    n1 = c1.shape[0]
    n2 = c2.shape[0]
    nflag = 0
    for i in range(c0.shape[0]):
        if m0[i]:
            continue
        ax = c0[i, 0]
        ay = c0[i, 1]
        for j in range(n1):
            if m1[j]:
                continue
            bx = c1[j, 0]
            by = c1[j, 1]
            for k in range(n2):
                if m2[k]:
                    continue
                cx = c2[k, 0]
                cy = c2[k, 1]
                s = _o2d(ax, ay, bx, by, cx, cy)
                if s == UNSURE:
                    if nflag < cap:
                        flags[nflag] = (i * n1 + j) * n2 + k
                    nflag += 1
                    continue
                s1 = _o2d(qx, qy, bx, by, cx, cy)
                s2 = _o2d(ax, ay, qx, qy, cx, cy)
                s3 = _o2d(ax, ay, bx, by, qx, qy)
                if s1 == UNSURE or s2 == UNSURE or s3 == UNSURE:
                    if nflag < cap:
                        flags[nflag] = (i * n1 + j) * n2 + k
                    nflag += 1
                    continue
                if s1 == -s or s2 == -s or s3 == -s:
                    continue
                return (i * n1 + j) * n2 + k, nflag
    return np.int64(-1), nflag


def _first_containing_2d(
    config: ColoredConfiguration, masks, witness: Point
) -> Optional[tuple[int, ...]]:
    c0, c1, c2 = config.classes
    n1, n2 = c1.shape[0], c2.shape[0]
    cap = 256
    while True:
        flags = np.empty(cap, dtype=np.int64)
        found, nflag = _scan2d_kernel(
            c0, c1, c2, masks[0], masks[1], masks[2],
            witness.coords[0], witness.coords[1], flags, cap,
        )
        if nflag <= cap:
            break
        cap = nflag
    # Uncertain tuples precede the kernel's first certain hit in scan
    # order, so the earliest exact hit among them wins.
    for code in flags[:nflag]:
        i, rem = divmod(int(code), n1 * n2)
        j, k = divmod(rem, n2)
        if contains((c0[i], c1[j], c2[k]), witness):
            return (i, j, k)
    if found >= 0:
        i, rem = divmod(int(found), n1 * n2)
        j, k = divmod(rem, n2)
        return (i, j, k)
    return None


def _first_containing_generic(
    config: ColoredConfiguration, masks, witness: Point
) -> Optional[tuple[int, ...]]:
    live = [np.flatnonzero(~mask) for mask in masks]
    for combo in itertools.product(*(idx.tolist() for idx in live)):
        vertices = tuple(config.classes[k][i] for k, i in enumerate(combo))
        if contains(vertices, witness):
            return tuple(int(i) for i in combo)
    return None


def _first_containing(config, masks, witness):
    if config.dim == 2:
        return _first_containing_2d(config, masks, witness)
    return _first_containing_generic(config, masks, witness)


def extract(
    cfg,
    r: int,
    *,
    best_effort: bool = False,
    strategy: str = "auto",
    candidates: int = 512,
    seed: int = 0,
) -> TverbergCertificate:
    """Extract r vertex-disjoint rainbow simplices covering one deep point.

    Greedy: find a deep point, then r times scan the remaining rainbow
    tuples in lexicographic index order and remove the first one whose
    closed simplex contains it.  With class sizes >= greedy_class_size(r, d)
    and witness fraction >= bound(d).value the scan provably never fails;
    otherwise run with best_effort=True, and a failed round raises
    ExtractionExhausted carrying the parts found so far.
    """
    config = (
        cfg if isinstance(cfg, ColoredConfiguration) else ColoredConfiguration(cfg)
    )
    r = int(r)
    if r < 1:
        raise InputError("r must be >= 1")
    d = config.dim
    need = greedy_class_size(r, d)
    min_size = min(config.class_sizes)
    if min_size < need and not best_effort:
        raise InputError(
            f"guaranteed extraction of r={r} parts in dimension {d} needs "
            f"class sizes >= {need} (got {min_size}); pass best_effort=True "
            "to try anyway"
        )
    dp = find_deep_point(config, strategy, candidates=candidates, seed=seed)
    witness = dp.point
    guaranteed = (
        not best_effort
        and min_size >= need
        and dp.report.fraction >= bound(d).value
    )
    masks = [np.zeros(n, dtype=np.bool_) for n in config.class_sizes]
    parts: list[TverbergPart] = []
    for _ in range(r):
        hit = _first_containing(config, masks, witness)
        if hit is None:
            raise ExtractionExhausted(
                f"only {len(parts)} of {r} disjoint covering simplices exist "
                "for this witness",
                parts=tuple(parts),
            )
        vertices = tuple(
            as_point(config.classes[k][i]) for k, i in enumerate(hit)
        )
        parts.append(TverbergPart(indices=hit, vertices=vertices))
        for k, i in enumerate(hit):
            masks[k][i] = True
    cert = TverbergCertificate(
        witness=witness,
        parts=tuple(parts),
        guaranteed=guaranteed,
        depth_fraction=dp.report.fraction,
    )
    if not verify_certificate(config, cert):
        raise CertificationError("extraction produced an invalid certificate")
    return cert


def verify_certificate(cfg, cert: TverbergCertificate) -> bool:
    """Independent soundness check: parts are index-disjoint, use one vertex
    per class matching the configuration, and all contain the witness."""
    config = (
        cfg if isinstance(cfg, ColoredConfiguration) else ColoredConfiguration(cfg)
    )
    k = config.dim + 1
    used: list[set[int]] = [set() for _ in range(k)]
    for part in cert.parts:
        if len(part.indices) != k or len(part.vertices) != k:
            return False
        for cls, (idx, vertex) in enumerate(zip(part.indices, part.vertices)):
            if not 0 <= idx < config.class_sizes[cls]:
                return False
            if idx in used[cls]:
                return False
            used[cls].add(idx)
            if tuple(float(v) for v in config.classes[cls][idx]) != vertex.coords:
                return False
        if not contains(part.vertices, cert.witness):
            return False
    return True
