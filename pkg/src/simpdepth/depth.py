"""Monochromatic and colorful simplicial depth, exact and Monte Carlo."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels, predicates
from .configuration import ColoredConfiguration
from .errors import DegeneracyError, InputError
from .geometry import Point, PointLike, as_point, contains

_Z95 = 1.959963984540054
_MC_BLOCK = 1 << 16


@dataclass(frozen=True)
class DepthReport:
    """Containing-simplex count out of a total, with the exact fraction."""

    containing: int
    total: int

    def __post_init__(self):
        if not 0 <= self.containing <= self.total:
            raise InputError("containing must lie in [0, total]")

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.containing, self.total)

    @property
    def fraction_float(self) -> float:
        return self.containing / self.total


@dataclass(frozen=True)
class MCEstimate:
    """Monte Carlo hit frequency with a Wilson 95% interval."""

    samples: int
    hits: int
    estimate: float
    ci_low: float
    ci_high: float
    seed: int

    def __post_init__(self):
        if not 0 <= self.hits <= self.samples:
            raise InputError("hits must lie in [0, samples]")
        if not self.ci_low <= self.estimate <= self.ci_high:
            raise InputError("estimate must lie inside its interval")


def wilson_interval(hits: int, samples: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    n = samples
    p = hits / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2.0 * n)) / denom
    half = (z / denom) * math.sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n))
    low = max(0.0, center - half)
    high = min(1.0, center + half)
    return min(low, p), max(high, p)


def _validated_points(points: Sequence[PointLike], q: PointLike) -> tuple[list[Point], Point]:
    pts = [as_point(p) for p in points]
    query = as_point(q)
    if any(p.dim != query.dim for p in pts):
        raise InputError("points and query have mixed dimensions")
    return pts, query


def mono_depth_exact(points: Sequence[PointLike], q: PointLike) -> DepthReport:
    """Brute-force closed simplicial depth of q in one point set."""
    pts, query = _validated_points(points, q)
    d = query.dim
    n = len(pts)
    if n < d + 1:
        raise InputError(f"need at least {d + 1} points in R^{d}, got {n}")
    containing = sum(
        1
        for subset in itertools.combinations(pts, d + 1)
        if contains(subset, query)
    )
    return DepthReport(containing, math.comb(n, d + 1))


def _resolve_after_flags(
    rest: np.ndarray,
    query: Point,
    after: np.ndarray,
    flags: np.ndarray,
    general_position: bool,
) -> None:
    qx, qy = query.coords
    for i, j in flags:
        s = predicates.orient2d(
            rest[i, 0], rest[i, 1], rest[j, 0], rest[j, 1], qx, qy
        )
        if s > 0:
            after[i] += 1
        elif s < 0:
            after[j] += 1
        else:
            if general_position:
                raise DegeneracyError(
                    "query is collinear with two data points"
                )
            dot = predicates.dot2(
                qx, qy, rest[i, 0], rest[i, 1], rest[j, 0], rest[j, 1]
            )
            # Same ray from q: break the angular tie by index so that each
            # half-plane-resident triple is counted exactly once.  Opposite
            # rays span q and never share an open half plane.
            if dot > 0:
                after[i] += 1


def mono_depth_2d_fast(
    points: Sequence[PointLike], q: PointLike, general_position: bool = False
) -> DepthReport:
    """O(n log n + n^2 filter) planar depth, exactly matching brute force.

    Counts the complement: triples confined to an open half plane through q
    cannot contain q (closed hulls), and every other triple must.  Pairs the
    float filter cannot order are re-resolved exactly, so degenerate data
    (collinear with q, repeated points, points equal to q) count identically
    to mono_depth_exact.  With general_position=True, inputs where q meets a
    data point or lies on a line through two data points raise instead.
    """
    pts, query = _validated_points(points, q)
    if query.dim != 2:
        raise InputError("mono_depth_2d_fast requires d=2")
    n = len(pts)
    if n < 3:
        raise InputError("need at least 3 points")
    zeros = sum(1 for p in pts if p.coords == query.coords)
    if zeros and general_position:
        raise DegeneracyError("query coincides with a data point")
    rest = np.array(
        [p.coords for p in pts if p.coords != query.coords], dtype=np.float64
    )
    m = rest.shape[0]
    after = np.zeros(m, dtype=np.int64)
    if m >= 2:
        cap = max(1024, 4 * m)
        while True:
            flags = np.empty((cap, 2), dtype=np.int64)
            after, nflag = _kernels.mono_after_kernel(
                rest, query.coords[0], query.coords[1], flags, cap
            )
            if nflag <= cap:
                break
            cap = nflag
        _resolve_after_flags(
            rest, query, after, flags[:nflag], general_position
        )
    noncontaining = int(sum(math.comb(int(h), 2) for h in after))
    containing = math.comb(m, 3) - noncontaining
    # Triples that use a point equal to q always contain q.
    containing += (
        math.comb(zeros, 3)
        + math.comb(zeros, 2) * m
        + zeros * math.comb(m, 2)
    )
    return DepthReport(containing, math.comb(n, 3))


def _as_configuration(cfg) -> ColoredConfiguration:
    if isinstance(cfg, ColoredConfiguration):
        return cfg
    return ColoredConfiguration(cfg)


def _count_with_kernel_2d(
    classes: Sequence[np.ndarray], query: Point
) -> int:
    c0, c1, c2 = classes
    qx, qy = query.coords
    cap = 1024
    while True:
        flags = np.empty((cap, 3), dtype=np.int64)
        count, nflag = _kernels.colorful_count_2d_kernel(
            c0, c1, c2, qx, qy, flags, cap
        )
        if nflag <= cap:
            break
        cap = nflag
    for i, j, k in flags[:nflag]:
        if contains((c0[i], c1[j], c2[k]), query):
            count += 1
    return int(count)


def _count_with_kernel_3d(
    classes: Sequence[np.ndarray], query: Point
) -> int:
    c0, c1, c2, c3 = classes
    q = np.asarray(query.coords, dtype=np.float64)
    cap = 1024
    while True:
        flags = np.empty((cap, 4), dtype=np.int64)
        count, nflag = _kernels.colorful_count_3d_kernel(
            c0, c1, c2, c3, q, flags, cap
        )
        if nflag <= cap:
            break
        cap = nflag
    for i, j, k, l in flags[:nflag]:
        if contains((c0[i], c1[j], c2[k], c3[l]), query):
            count += 1
    return int(count)


def colorful_count(cfg: ColoredConfiguration, q: PointLike) -> int:
    """Number of rainbow tuples whose closed simplex contains q."""
    config = _as_configuration(cfg)
    query = as_point(q)
    if query.dim != config.dim:
        raise InputError(
            f"query dimension {query.dim} != configuration dimension {config.dim}"
        )
    if config.dim == 2:
        return _count_with_kernel_2d(config.classes, query)
    if config.dim == 3:
        return _count_with_kernel_3d(config.classes, query)
    count = 0
    for combo in itertools.product(*(c.tolist() for c in config.classes)):
        if contains(combo, query):
            count += 1
    return count


def colorful_depth_exact(cfg: ColoredConfiguration, q: PointLike) -> DepthReport:
    """Exact closed colorful depth: one vertex per class, ordered tuples."""
    config = _as_configuration(cfg)
    return DepthReport(colorful_count(config, q), config.total_tuples)


def _mc_block_hits(samplers, query: Point, seed: int, block: int, size: int) -> int:
    rng = np.random.default_rng(np.random.SeedSequence((seed, block)))
    draws = np.stack([s.sample(rng, size) for s in samplers], axis=1)
    d = query.dim
    cap = 256
    while True:
        flags = np.empty(cap, dtype=np.int64)
        if d == 1:
            hits, nflag = _kernels.mc_hits_1d_kernel(
                draws, query.coords[0], flags, cap
            )
        elif d == 2:
            hits, nflag = _kernels.mc_hits_2d_kernel(
                draws, query.coords[0], query.coords[1], flags, cap
            )
        elif d == 3:
            hits, nflag = _kernels.mc_hits_3d_kernel(
                draws, query.coords[0], query.coords[1], query.coords[2], flags, cap
            )
        else:
            return sum(1 for t in range(size) if contains(draws[t], query))
        if nflag <= cap:
            break
        cap = nflag
    for t in flags[:nflag]:
        if contains(draws[t], query):
            hits += 1
    return int(hits)


def colorful_depth_mc(
    samplers,
    q: PointLike,
    samples: int,
    seed: int,
    threads: int = 1,
) -> MCEstimate:
    """Monte Carlo colorful depth of q under d+1 sampled measures.

    The sample index space is split into fixed blocks, each with its own
    (seed, block) generator, so the result is bit-identical for any thread
    count.
    """
    query = as_point(q)
    d = query.dim
    samplers = list(samplers)
    if len(samplers) != d + 1:
        raise InputError(f"need {d + 1} samplers for dimension {d}")
    if any(s.dim != d for s in samplers):
        raise InputError("sampler dimension mismatch")
    if samples < 1:
        raise InputError("samples must be >= 1")
    if not 0 <= int(seed) < 2**64:
        raise InputError("seed must fit in uint64")
    seed = int(seed)
    blocks = [
        (b, min(_MC_BLOCK, samples - b * _MC_BLOCK))
        for b in range((samples + _MC_BLOCK - 1) // _MC_BLOCK)
    ]
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            hits = sum(
                pool.map(
                    lambda bs: _mc_block_hits(samplers, query, seed, bs[0], bs[1]),
                    blocks,
                )
            )
    else:
        hits = sum(_mc_block_hits(samplers, query, seed, b, m) for b, m in blocks)
    low, high = wilson_interval(hits, samples)
    return MCEstimate(
        samples=samples,
        hits=hits,
        estimate=hits / samples,
        ci_low=low,
        ci_high=high,
        seed=seed,
    )
