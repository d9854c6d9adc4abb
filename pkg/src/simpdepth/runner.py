"""One-shot run orchestration shared by the CLI and the HTTP service.

A RunConfig names a mode plus its inputs; run() builds or loads the
instance, executes the mode, and returns a JSON-ready report.  Reports are
deterministic for a fixed RunConfig apart from the top-level "timing"
object, which callers strip when comparing payloads.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ._version import __version__
from .configuration import ColoredConfiguration
from .depth import colorful_depth_exact, colorful_depth_mc
from .errors import InputError
from .io import (
    REPORT_SCHEMA_VERSION,
    configuration_hash,
    configuration_text,
    rational_json,
    read_configuration,
    write_configuration,
    write_report,
)
from .samplers import GenerationSpec, generate, standard_sampler
from .selection import verify_selection, find_deep_point
from .tverberg import extract

MODES = ("gen", "depth", "deepest", "verify", "tverberg", "mc")
SAMPLER_KINDS = ("uniform-box", "gaussian", "uniform-ball")


@dataclass
class RunConfig:
    """Inputs of one run; mode-specific fields are validated in run()."""

    mode: str
    seed: int = 0
    dim: int = 2
    classes: Optional[int] = None
    size: int = 30
    kind: str = "general"
    strategy: str = "auto"
    tolerance: Optional[str] = None
    samples: int = 100_000
    threads: int = 1
    r: int = 2
    instances: int = 1
    input_path: Optional[str] = None
    out: Optional[str] = None
    sampler: str = "uniform-box"
    point: Optional[tuple[float, ...]] = None
    best_effort: bool = False
    candidates: int = 512


def _tolerance_fraction(rc: RunConfig) -> Optional[Fraction]:
    if rc.tolerance is None:
        return None
    try:
        return Fraction(rc.tolerance)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid tolerance {rc.tolerance!r}: {exc}") from exc


def _generation_spec(rc: RunConfig) -> GenerationSpec:
    if rc.sampler not in SAMPLER_KINDS:
        raise InputError(
            f"unknown sampler {rc.sampler!r}; expected one of {SAMPLER_KINDS}"
        )
    if rc.classes is not None and rc.classes != rc.dim + 1:
        raise InputError(
            f"colorful depth needs exactly dim+1 = {rc.dim + 1} classes "
            f"(got {rc.classes})"
        )
    return GenerationSpec(
        dim=rc.dim,
        sizes=(rc.size,),
        samplers=(standard_sampler(rc.sampler, rc.dim),),
        coincide_last_two=(rc.kind == "two-coincide"),
    )


def _instance(rc: RunConfig, seed: Optional[int] = None) -> ColoredConfiguration:
    if rc.input_path is not None:
        return read_configuration(rc.input_path)
    return generate(_generation_spec(rc), rc.seed if seed is None else seed)


def _point_list(point) -> list[float]:
    return [float(v) for v in point]


def _require_point(rc: RunConfig, dim: int) -> tuple[float, ...]:
    if rc.point is None:
        raise InputError("this mode requires --point")
    point = tuple(float(v) for v in rc.point)
    if len(point) != dim:
        raise InputError(f"point has {len(point)} coordinates, expected {dim}")
    return point


def _run_gen(rc: RunConfig):
    cfg = _instance(rc)
    results = {
        "dim": cfg.dim,
        "class_sizes": list(cfg.class_sizes),
        "config_hash": configuration_hash(cfg),
    }
    if rc.out:
        write_configuration(cfg, rc.out)
        results["path"] = rc.out
    else:
        results["text"] = configuration_text(cfg)
    return results, None


def _run_depth(rc: RunConfig):
    cfg = _instance(rc)
    point = _require_point(rc, cfg.dim)
    rep = colorful_depth_exact(cfg, point)
    results = {
        "point": _point_list(point),
        "containing": rep.containing,
        "total": rep.total,
        "fraction": rational_json(rep.fraction),
        "fraction_float": rep.fraction_float,
        "config_hash": configuration_hash(cfg),
    }
    return results, None


def _run_deepest(rc: RunConfig):
    cfg = _instance(rc)
    dp = find_deep_point(
        cfg, rc.strategy, candidates=rc.candidates, seed=rc.seed
    )
    results = {
        "point": _point_list(dp.point),
        "containing": dp.report.containing,
        "total": dp.report.total,
        "fraction": rational_json(dp.report.fraction),
        "fraction_float": dp.report.fraction_float,
        "strategy": dp.strategy,
        "certified": dp.certified,
        "candidates_evaluated": dp.candidates_evaluated,
        "max_count": dp.max_count,
        "max_fraction": (
            rational_json(dp.max_fraction) if dp.max_fraction is not None else None
        ),
        "config_hash": configuration_hash(cfg),
    }
    return results, None


def _run_verify(rc: RunConfig):
    if rc.instances < 1:
        raise InputError("instances must be >= 1")
    tol = _tolerance_fraction(rc)
    entries = []
    passes = 0
    bound_info = None
    for index in range(rc.instances):
        seed = (rc.seed + index) % 2**64
        cfg = _instance(rc, seed=seed)
        vr = verify_selection(
            cfg,
            kind=rc.kind,
            tolerance=tol,
            strategy=rc.strategy,
            candidates=rc.candidates,
            seed=seed,
            threads=rc.threads,
        )
        bound_info = vr.bound
        passes += vr.passed
        entries.append(
            {
                "seed": seed,
                "passed": vr.passed,
                "achieved": rational_json(vr.achieved),
                "achieved_float": float(vr.achieved),
                "max_fraction": (
                    rational_json(vr.max_fraction)
                    if vr.max_fraction is not None
                    else None
                ),
                "witness": _point_list(vr.witness),
                "strategy": vr.strategy,
                "certified": vr.certified,
                "tolerance": rational_json(vr.tolerance),
                "config_hash": vr.config_hash,
            }
        )
    results = {
        "kind": rc.kind,
        "bound": rational_json(bound_info.value),
        "instances": rc.instances,
        "passes": passes,
        "entries": entries,
    }
    return results, passes == rc.instances


def _run_tverberg(rc: RunConfig):
    cfg = _instance(rc)
    cert = extract(
        cfg,
        rc.r,
        best_effort=rc.best_effort,
        strategy=rc.strategy,
        candidates=rc.candidates,
        seed=rc.seed,
    )
    results = {
        "r": rc.r,
        "witness": _point_list(cert.witness),
        "depth_fraction": rational_json(cert.depth_fraction),
        "guaranteed": cert.guaranteed,
        "parts": [
            {
                "indices": list(part.indices),
                "vertices": [_point_list(v) for v in part.vertices],
            }
            for part in cert.parts
        ],
        "config_hash": configuration_hash(cfg),
    }
    return results, None


def _run_mc(rc: RunConfig):
    if rc.input_path is not None:
        raise InputError("mc mode samples measures; it does not read instance files")
    if rc.sampler not in SAMPLER_KINDS:
        raise InputError(
            f"unknown sampler {rc.sampler!r}; expected one of {SAMPLER_KINDS}"
        )
    point = rc.point if rc.point is not None else (0.0,) * rc.dim
    if len(point) != rc.dim:
        raise InputError(f"point has {len(point)} coordinates, expected {rc.dim}")
    samplers = tuple(
        standard_sampler(rc.sampler, rc.dim) for _ in range(rc.dim + 1)
    )
    est = colorful_depth_mc(samplers, point, rc.samples, rc.seed, threads=rc.threads)
    results = {
        "sampler": rc.sampler,
        "point": _point_list(point),
        "samples": est.samples,
        "hits": est.hits,
        "estimate": est.estimate,
        "ci_low": est.ci_low,
        "ci_high": est.ci_high,
    }
    return results, None


_HANDLERS = {
    "gen": _run_gen,
    "depth": _run_depth,
    "deepest": _run_deepest,
    "verify": _run_verify,
    "tverberg": _run_tverberg,
    "mc": _run_mc,
}


def run(rc: RunConfig) -> dict:
    """Execute one mode and return its report dictionary.

    The report carries a "passed" key only for modes with a pass/fail
    meaning (verify).  When rc.out is set the report (for gen: the
    configuration) is written there as well.
    """
    if rc.mode not in MODES:
        raise InputError(f"unknown mode {rc.mode!r}; expected one of {MODES}")
    if not 0 <= int(rc.seed) < 2**64:
        raise InputError("seed must fit in uint64")
    started = time.perf_counter()
    results, passed = _HANDLERS[rc.mode](rc)
    report = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "tool": {"name": "simpdepth", "version": __version__},
        "mode": rc.mode,
        "seed": rc.seed,
        "results": results,
        "timing": {"seconds": time.perf_counter() - started},
    }
    if passed is not None:
        report["passed"] = passed
    if rc.out and rc.mode != "gen":
        write_report(report, rc.out)
    return report
