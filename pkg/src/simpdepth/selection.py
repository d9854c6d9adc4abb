"""Deep-point search and verification of colorful depth lower bounds.

A random rainbow simplex (one vertex per class) covers a well-chosen point
with probability at least 1/(d+1)!, improved to 2d/((d+1)!(d+1)) when two
of the classes coincide.  This module exposes those bounds exactly, finds
deep points (certified in dimensions 1 and 2, heuristic above), and checks
configurations or sampled measures against the bounds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import arrangement, predicates
from .configuration import ColoredConfiguration
from .depth import (
    DepthReport,
    MCEstimate,
    colorful_count,
    colorful_depth_mc,
    wilson_interval,
)
from .errors import CertificationError, InputError
from .geometry import Point, as_point
from .io import configuration_hash
from .samplers import GenerationSpec, generate

BOUND_KINDS = ("general", "two-coincide")
STRATEGIES = ("auto", "arrangement-2d", "exhaustive-1d", "rainbow-centroids", "grid-refine")


@dataclass(frozen=True)
class BoundSpec:
    """Exact rational depth lower bound for one dimension and kind."""

    d: int
    kind: str
    value: Fraction


def bound(d: int, kind: str = "general") -> BoundSpec:
    """Guaranteed covered fraction: 1/(d+1)! or 2d/((d+1)!(d+1))."""
    d = int(d)
    if d < 1:
        raise InputError("dimension must be >= 1")
    if kind == "general":
        value = Fraction(1, math.factorial(d + 1))
    elif kind == "two-coincide":
        value = Fraction(2 * d, math.factorial(d + 1) * (d + 1))
    else:
        raise InputError(f"unknown bound kind {kind!r}; expected one of {BOUND_KINDS}")
    return BoundSpec(d=d, kind=kind, value=value)


@dataclass(frozen=True)
class DeepPointResult:
    """Outcome of a deep-point search.

    ``report`` is always the exact recomputed depth of ``point``.  For
    certified strategies ``max_count`` is the exact global maximum of the
    closed depth over the whole space; the returned point attains it
    whenever the maximizing location is exactly representable in binary64
    (always true for data-point maxima), and otherwise comes as close as
    the rounded crossing allows.
    """

    point: Point
    report: DepthReport
    strategy: str
    candidates_evaluated: int
    certified: bool = False
    max_count: Optional[int] = None

    @property
    def max_fraction(self) -> Optional[Fraction]:
        if self.max_count is None:
            return None
        return Fraction(self.max_count, self.report.total)


def _as_config(cfg) -> ColoredConfiguration:
    if isinstance(cfg, ColoredConfiguration):
        return cfg
    return ColoredConfiguration(cfg)


def find_deep_point(
    cfg,
    strategy: str = "auto",
    *,
    candidates: int = 512,
    seed: int = 0,
    grid_size: int = 8,
    refine_rounds: int = 4,
) -> DeepPointResult:
    """Search for a point of (near-)maximal closed colorful depth.

    Strategies:
      - ``arrangement-2d`` (d=2): certified global maximum via the line
        arrangement of cross-class point pairs;
      - ``exhaustive-1d`` (d=1): certified via scanning all coordinates;
      - ``rainbow-centroids``: centroids of sampled rainbow simplices (all
        of them when the tuple space is small enough);
      - ``grid-refine``: iteratively refined bounding-box grid;
      - ``auto``: certified strategy when one exists for the dimension,
        otherwise rainbow-centroids.
    """
    config = _as_config(cfg)
    if strategy not in STRATEGIES:
        raise InputError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if strategy == "auto":
        if config.dim == 1:
            strategy = "exhaustive-1d"
        elif config.dim == 2:
            strategy = "arrangement-2d"
        else:
            strategy = "rainbow-centroids"
    if strategy == "arrangement-2d":
        if config.dim != 2:
            raise InputError("arrangement-2d requires a 2-dimensional configuration")
        return _deep_point_arrangement(config)
    if strategy == "exhaustive-1d":
        if config.dim != 1:
            raise InputError("exhaustive-1d requires a 1-dimensional configuration")
        return _deep_point_1d(config)
    if strategy == "rainbow-centroids":
        return _deep_point_centroids(config, candidates, seed)
    return _deep_point_grid(config, grid_size, refine_rounds)


def _deep_point_arrangement(config: ColoredConfiguration) -> DeepPointResult:
    max_count, (ev_count, ev_point), (data_count, data_point), ncand = (
        arrangement.certified_max_2d(config)
    )
    recount_data = colorful_count(config, data_point)
    if recount_data != data_count:
        raise CertificationError(
            "arrangement data-point depth disagrees with exact recount "
            f"({data_count} vs {recount_data})"
        )
    best_point, best_count = data_point, data_count
    if ev_count > best_count:
        recount_ev = colorful_count(config, ev_point)
        if recount_ev > max_count:
            raise CertificationError(
                "depth at a rounded crossing exceeds the certified maximum "
                f"({recount_ev} vs {max_count})"
            )
        if recount_ev > best_count or (
            recount_ev == best_count and ev_point < data_point
        ):
            best_point, best_count = ev_point, recount_ev
    if best_count > max_count:
        raise CertificationError(
            f"witness depth {best_count} exceeds certified maximum {max_count}"
        )
    return DeepPointResult(
        point=as_point(best_point),
        report=DepthReport(containing=best_count, total=config.total_tuples),
        strategy="arrangement-2d",
        candidates_evaluated=ncand,
        certified=True,
        max_count=max_count,
    )


def _deep_point_1d(config: ColoredConfiguration) -> DeepPointResult:
    # On the line the closed depth is piecewise constant between data
    # coordinates and upper semicontinuous, so its maximum is attained at
    # a data coordinate; scanning all of them is a certified search.
    a = config.classes[0][:, 0]
    b = config.classes[1][:, 0]
    qs = np.unique(np.concatenate([a, b]))
    na, nb = a.shape[0], b.shape[0]
    best_count = -1
    best_q = 0.0
    for q in qs:
        noncross = int((a > q).sum()) * int((b > q).sum()) + int((a < q).sum()) * int(
            (b < q).sum()
        )
        count = na * nb - noncross
        if count > best_count:
            best_count = count
            best_q = float(q)
    recount = colorful_count(config, (best_q,))
    if recount != best_count:
        raise CertificationError(
            f"1d scan depth disagrees with exact recount ({best_count} vs {recount})"
        )
    return DeepPointResult(
        point=as_point((best_q,)),
        report=DepthReport(containing=best_count, total=config.total_tuples),
        strategy="exhaustive-1d",
        candidates_evaluated=int(qs.shape[0]),
        certified=True,
        max_count=best_count,
    )


def _deep_point_centroids(
    config: ColoredConfiguration, candidates: int, seed: int
) -> DeepPointResult:
    if candidates < 1:
        raise InputError("candidates must be >= 1")
    sizes = config.class_sizes
    if config.total_tuples <= candidates:
        idx = np.array(
            list(itertools.product(*(range(n) for n in sizes))), dtype=np.int64
        )
    else:
        rng = np.random.default_rng(np.random.SeedSequence((int(seed), 11)))
        idx = np.stack(
            [rng.integers(0, n, size=candidates) for n in sizes], axis=1
        )
    verts = np.stack(
        [config.classes[k][idx[:, k]] for k in range(config.dim + 1)], axis=1
    )
    cents = np.unique(verts.mean(axis=1), axis=0)
    best_count = -1
    best_point = cents[0]
    for row in cents:  # rows are lex sorted; first argmax wins ties
        cnt = colorful_count(config, row)
        if cnt > best_count:
            best_count = cnt
            best_point = row
    return DeepPointResult(
        point=as_point(best_point),
        report=DepthReport(containing=best_count, total=config.total_tuples),
        strategy="rainbow-centroids",
        candidates_evaluated=int(cents.shape[0]),
        certified=False,
    )


def _deep_point_grid(
    config: ColoredConfiguration, grid_size: int, refine_rounds: int
) -> DeepPointResult:
    if grid_size < 2:
        raise InputError("grid_size must be >= 2")
    if refine_rounds < 1:
        raise InputError("refine_rounds must be >= 1")
    d = config.dim
    if grid_size**d > 65536:
        raise InputError("grid_size**dim too large; lower grid_size")
    allp = config.all_points()
    lo = allp.min(axis=0)
    hi = allp.max(axis=0)
    center = (lo + hi) / 2.0
    half = (hi - lo) / 2.0
    best_count = -1
    best_point = center
    ncand = 0
    for _ in range(refine_rounds):
        axes = [
            np.linspace(center[k] - half[k], center[k] + half[k], grid_size)
            for k in range(d)
        ]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d)
        ncand += mesh.shape[0]
        for row in mesh:  # lex order; strict improvement keeps earliest winner
            cnt = colorful_count(config, row)
            if cnt > best_count:
                best_count = cnt
                best_point = row.copy()
        center = best_point
        half = half / 2.0
    return DeepPointResult(
        point=as_point(best_point),
        report=DepthReport(containing=best_count, total=config.total_tuples),
        strategy="grid-refine",
        candidates_evaluated=ncand,
        certified=False,
    )


@dataclass(frozen=True)
class VerificationReport:
    """Result of checking one configuration or sampler family against a bound."""

    passed: bool
    dim: int
    kind: str
    bound: BoundSpec
    tolerance: Fraction
    achieved: Fraction
    witness: Point
    strategy: str
    certified: bool
    candidates_evaluated: int
    max_fraction: Optional[Fraction] = None
    config_hash: Optional[str] = None
    mc: Optional[MCEstimate] = None


def _as_tolerance(tolerance, default: Fraction) -> Fraction:
    if tolerance is None:
        return default
    tol = Fraction(tolerance)
    if tol < 0:
        raise InputError("tolerance must be >= 0")
    return tol


def _is_sampler_family(target) -> bool:
    if isinstance(target, (ColoredConfiguration, np.ndarray)):
        return False
    try:
        items = list(target)
    except TypeError:
        return False
    return bool(items) and all(hasattr(s, "sample") and hasattr(s, "dim") for s in items)


def verify_selection(
    target,
    kind: str = "general",
    tolerance=None,
    *,
    strategy: str = "auto",
    candidates: int = 512,
    seed: int = 0,
    mc_samples: int = 200_000,
    proxy_size: int = 24,
    threads: int = 1,
) -> VerificationReport:
    """Check a configuration (exact) or sampler family (Monte Carlo) against
    the depth bound for (dim, kind), minus a finite-sample tolerance.

    The compared quantity is the witness point's exact fraction (the
    discrete analogue of the covered probability).  The default tolerance
    (d+1)/min_class_size covers discretization of a continuous measure by
    min_class_size atoms; certified strategies also report the exact
    maximum fraction.
    """
    if _is_sampler_family(target):
        return _verify_samplers(
            tuple(target), kind, tolerance, strategy, candidates, seed,
            mc_samples, proxy_size, threads,
        )
    config = _as_config(target)
    d = config.dim
    b = bound(d, kind)
    if kind == "two-coincide" and not np.array_equal(
        config.classes[-1], config.classes[-2]
    ):
        raise InputError("two-coincide verification requires identical last two classes")
    tol = _as_tolerance(tolerance, Fraction(d + 1, min(config.class_sizes)))
    dp = find_deep_point(config, strategy, candidates=candidates, seed=seed)
    achieved = dp.report.fraction
    return VerificationReport(
        passed=achieved >= b.value - tol,
        dim=d,
        kind=kind,
        bound=b,
        tolerance=tol,
        achieved=achieved,
        witness=dp.point,
        strategy=dp.strategy,
        certified=dp.certified,
        candidates_evaluated=dp.candidates_evaluated,
        max_fraction=dp.max_fraction,
        config_hash=configuration_hash(config),
    )


def _verify_samplers(
    samplers: tuple,
    kind: str,
    tolerance,
    strategy: str,
    candidates: int,
    seed: int,
    mc_samples: int,
    proxy_size: int,
    threads: int,
) -> VerificationReport:
    if not samplers:
        raise InputError("empty sampler family")
    d = samplers[0].dim
    if len(samplers) != d + 1:
        raise InputError(f"need {d + 1} samplers for dimension {d}")
    b = bound(d, kind)
    if kind == "two-coincide" and samplers[-1] != samplers[-2]:
        raise InputError("two-coincide verification requires identical last two samplers")
    tol = _as_tolerance(tolerance, Fraction(d + 1, proxy_size))
    spec = GenerationSpec(
        dim=d,
        sizes=(proxy_size,),
        samplers=samplers,
        coincide_last_two=(kind == "two-coincide"),
    )
    proxy = generate(spec, seed)
    dp = find_deep_point(proxy, strategy, candidates=candidates, seed=seed)
    est = colorful_depth_mc(samplers, dp.point, mc_samples, seed=seed, threads=threads)
    achieved = Fraction(est.hits, est.samples)
    return VerificationReport(
        passed=achieved >= b.value - tol,
        dim=d,
        kind=kind,
        bound=b,
        tolerance=tol,
        achieved=achieved,
        witness=dp.point,
        strategy=dp.strategy,
        certified=False,
        candidates_evaluated=dp.candidates_evaluated,
        max_fraction=None,
        config_hash=None,
        mc=est,
    )


def crossing_floor(x) -> Fraction:
    """Minimum crossing probability 2x(1-x) of a random same-measure segment
    against a divider leaving mass fraction x on one side."""
    xf = Fraction(x)
    if not 0 <= xf <= 1:
        raise InputError("mass fraction must lie in [0, 1]")
    return 2 * xf * (1 - xf)


@dataclass(frozen=True)
class SegmentCrossingReport:
    """Observed crossing frequency of random same-class segments versus the
    analytic floor 2x(1-x)."""

    side_fraction: Fraction
    crossing_fraction: Fraction
    floor: Fraction
    pairs: int
    mc: Optional[MCEstimate] = None


def _divider_signs(points: np.ndarray, a: Point, b: Point) -> np.ndarray:
    signs = np.empty(points.shape[0], dtype=np.int8)
    for i, (px, py) in enumerate(points):
        signs[i] = predicates.orient2d(
            b.coords[0], b.coords[1], float(px), float(py), a.coords[0], a.coords[1]
        )
    return signs


def segment_crossing_fraction(
    target,
    divider: Sequence,
    *,
    samples: int = 100_000,
    seed: int = 0,
) -> SegmentCrossingReport:
    """Fraction of ordered same-class point pairs whose closed segment meets
    the dividing line, against the floor 2x(1-x).

    ``divider`` is a pair of distinct points spanning the line.  Requires a
    planar input whose last two classes coincide; the segment's endpoints
    are two independent picks of that shared class (a degenerate pair
    crosses only if its point lies on the line).  Boundary points count
    toward side A, which only strengthens the floor inequality.  Sampler
    families are measured by Monte Carlo instead of enumeration.
    """
    try:
        a, b = (as_point(p) for p in divider)
    except (TypeError, ValueError) as exc:
        raise InputError(f"divider must be two planar points: {exc}") from exc
    if a.dim != 2 or b.dim != 2:
        raise InputError("divider points must be 2-dimensional")
    if a.coords == b.coords:
        raise InputError("divider points must be distinct")
    if _is_sampler_family(target):
        samplers = tuple(target)
        if len(samplers) != 3 or any(s.dim != 2 for s in samplers):
            raise InputError("need three planar samplers")
        if samplers[-1] != samplers[-2]:
            raise InputError("segment crossing requires identical last two samplers")
        if samples < 1:
            raise InputError("samples must be >= 1")
        rng = np.random.default_rng(np.random.SeedSequence((int(seed), 23)))
        p1 = samplers[-1].sample(rng, samples)
        p2 = samplers[-1].sample(rng, samples)
        s1 = _divider_signs(p1, a, b)
        s2 = _divider_signs(p2, a, b)
        hits = int((s1.astype(np.int32) * s2.astype(np.int32) <= 0).sum())
        onside = int((s1 >= 0).sum()) + int((s2 >= 0).sum())
        low, high = wilson_interval(hits, samples)
        est = MCEstimate(
            samples=samples,
            hits=hits,
            estimate=hits / samples,
            ci_low=low,
            ci_high=high,
            seed=int(seed),
        )
        x = Fraction(onside, 2 * samples)
        return SegmentCrossingReport(
            side_fraction=x,
            crossing_fraction=Fraction(hits, samples),
            floor=crossing_floor(x),
            pairs=samples,
            mc=est,
        )
    config = _as_config(target)
    if config.dim != 2:
        raise InputError("segment crossing demo requires a planar configuration")
    if not np.array_equal(config.classes[-1], config.classes[-2]):
        raise InputError("segment crossing requires identical last two classes")
    pts = config.classes[-1]
    signs = _divider_signs(pts, a, b)
    n = pts.shape[0]
    npos = int((signs > 0).sum())
    nneg = int((signs < 0).sum())
    x = Fraction(n - nneg, n)
    crossing = Fraction(n * n - npos * npos - nneg * nneg, n * n)
    return SegmentCrossingReport(
        side_fraction=x,
        crossing_fraction=crossing,
        floor=crossing_floor(x),
        pairs=n * n,
    )
