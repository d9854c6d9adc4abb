"""Seeded measure samplers and deterministic instance generation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .configuration import ColoredConfiguration
from .errors import DegeneracyError, InputError
from . import predicates


def _finite_tuple(values, what: str) -> tuple[float, ...]:
    out = tuple(float(v) for v in values)
    if not out:
        raise InputError(f"{what} must be nonempty")
    if any(not math.isfinite(v) for v in out):
        raise InputError(f"{what} has a non-finite entry")
    return out


@dataclass(frozen=True)
class GaussianSampler:
    """Independent normal coordinates with diagonal covariance."""

    mean: tuple[float, ...]
    cov_diag: tuple[float, ...]

    def __init__(self, mean, cov_diag=None):
        mean = _finite_tuple(mean, "mean")
        if cov_diag is None:
            cov_diag = (1.0,) * len(mean)
        cov_diag = _finite_tuple(cov_diag, "cov_diag")
        if len(cov_diag) != len(mean):
            raise InputError("mean and cov_diag lengths differ")
        if any(v <= 0 for v in cov_diag):
            raise InputError("covariance diagonal must be positive")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov_diag", cov_diag)

    @property
    def dim(self) -> int:
        return len(self.mean)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        std = np.sqrt(np.asarray(self.cov_diag))
        return np.asarray(self.mean) + rng.standard_normal((n, self.dim)) * std

    def spec(self) -> dict:
        return {
            "kind": "gaussian",
            "mean": list(self.mean),
            "cov_diag": list(self.cov_diag),
        }


@dataclass(frozen=True)
class UniformBoxSampler:
    """Uniform distribution on an axis-aligned box."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __init__(self, lo, hi):
        lo = _finite_tuple(lo, "lo")
        hi = _finite_tuple(hi, "hi")
        if len(lo) != len(hi):
            raise InputError("lo and hi lengths differ")
        if any(a >= b for a, b in zip(lo, hi)):
            raise InputError("box must have positive extent in every axis")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return len(self.lo)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        lo = np.asarray(self.lo)
        hi = np.asarray(self.hi)
        return lo + rng.random((n, self.dim)) * (hi - lo)

    def spec(self) -> dict:
        return {"kind": "uniform-box", "lo": list(self.lo), "hi": list(self.hi)}


@dataclass(frozen=True)
class UniformBallSampler:
    """Uniform distribution on a closed Euclidean ball."""

    center: tuple[float, ...]
    radius: float

    def __init__(self, center, radius):
        center = _finite_tuple(center, "center")
        radius = float(radius)
        if not math.isfinite(radius) or radius <= 0:
            raise InputError("radius must be positive and finite")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", radius)

    @property
    def dim(self) -> int:
        return len(self.center)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        d = self.dim
        dirs = rng.standard_normal((n, d))
        norms = np.linalg.norm(dirs, axis=1, keepdims=True)
        norms[norms == 0.0] = 1.0
        radii = self.radius * rng.random(n) ** (1.0 / d)
        return np.asarray(self.center) + dirs / norms * radii[:, None]

    def spec(self) -> dict:
        return {
            "kind": "uniform-ball",
            "center": list(self.center),
            "radius": self.radius,
        }


@dataclass(frozen=True)
class PointMassSampler:
    """Degenerate distribution concentrated on one point."""

    point: tuple[float, ...]

    def __init__(self, point):
        object.__setattr__(self, "point", _finite_tuple(point, "point"))

    @property
    def dim(self) -> int:
        return len(self.point)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return np.tile(np.asarray(self.point), (n, 1))

    def spec(self) -> dict:
        return {"kind": "point-mass", "point": list(self.point)}


@dataclass(frozen=True)
class MixtureSampler:
    """Finite mixture with exact rational weights summing to 1."""

    weights: tuple[Fraction, ...]
    components: tuple

    def __init__(self, weights, components):
        weights = tuple(_as_fraction(w) for w in weights)
        components = tuple(components)
        if len(weights) != len(components) or not components:
            raise InputError("weights and components must align and be nonempty")
        if any(w < 0 for w in weights):
            raise InputError("mixture weights must be nonnegative")
        if sum(weights) != 1:
            raise InputError("mixture weights must sum to exactly 1")
        d = components[0].dim
        if any(c.dim != d for c in components):
            raise InputError("mixture components have mixed dimensions")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "components", components)

    @property
    def dim(self) -> int:
        return self.components[0].dim

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        cum = np.cumsum([float(w) for w in self.weights])
        picks = np.searchsorted(cum, rng.random(n), side="right")
        picks = np.minimum(picks, len(self.components) - 1)
        out = np.empty((n, self.dim))
        for idx, comp in enumerate(self.components):
            mask = picks == idx
            cnt = int(mask.sum())
            if cnt:
                out[mask] = comp.sample(rng, cnt)
        return out

    def spec(self) -> dict:
        return {
            "kind": "mixture",
            "weights": [
                {"num": w.numerator, "den": w.denominator} for w in self.weights
            ],
            "components": [c.spec() for c in self.components],
        }


MeasureSampler = Union[
    GaussianSampler,
    UniformBoxSampler,
    UniformBallSampler,
    PointMassSampler,
    MixtureSampler,
]


def _as_fraction(w) -> Fraction:
    if isinstance(w, Fraction):
        return w
    if isinstance(w, int):
        return Fraction(w)
    if isinstance(w, str):
        return Fraction(w)
    if isinstance(w, dict):
        return Fraction(int(w["num"]), int(w["den"]))
    raise InputError(f"cannot interpret mixture weight {w!r} exactly")


def sampler_from_spec(spec: dict) -> MeasureSampler:
    """Build a sampler from its JSON-able spec dictionary."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InputError("sampler spec must be a dict with a 'kind'")
    kind = spec["kind"]
    try:
        if kind == "gaussian":
            return GaussianSampler(spec["mean"], spec.get("cov_diag"))
        if kind == "uniform-box":
            return UniformBoxSampler(spec["lo"], spec["hi"])
        if kind == "uniform-ball":
            return UniformBallSampler(spec["center"], spec["radius"])
        if kind == "point-mass":
            return PointMassSampler(spec["point"])
        if kind == "mixture":
            return MixtureSampler(
                spec["weights"],
                [sampler_from_spec(c) for c in spec["components"]],
            )
    except KeyError as exc:
        raise InputError(f"sampler spec missing field {exc}") from exc
    raise InputError(f"unknown sampler kind {kind!r}")


def standard_sampler(kind: str, dim: int) -> MeasureSampler:
    """Default-parameter sampler of a given kind: the CLI building block."""
    if kind == "gaussian":
        return GaussianSampler((0.0,) * dim)
    if kind == "uniform-box":
        return UniformBoxSampler((0.0,) * dim, (1.0,) * dim)
    if kind == "uniform-ball":
        return UniformBallSampler((0.0,) * dim, 1.0)
    raise InputError(f"no default parameters for sampler kind {kind!r}")


@dataclass(frozen=True)
class GenerationSpec:
    """Deterministic recipe for one ColoredConfiguration."""

    dim: int
    sizes: tuple[int, ...]
    samplers: tuple[MeasureSampler, ...] = ()
    coincide_last_two: bool = False
    general_position: str = "allow"
    max_retries: int = 16

    def __post_init__(self):
        if self.dim < 1:
            raise InputError("dim must be >= 1")
        k = self.dim + 1
        sizes = tuple(int(n) for n in self.sizes)
        if len(sizes) == 1:
            sizes = sizes * k
        if len(sizes) != k or any(n < 1 for n in sizes):
            raise InputError(f"need {k} positive class sizes")
        object.__setattr__(self, "sizes", sizes)
        samplers = tuple(self.samplers)
        if not samplers:
            samplers = (standard_sampler("uniform-box", self.dim),) * k
        if len(samplers) == 1:
            samplers = samplers * k
        if len(samplers) != k:
            raise InputError(f"need {k} samplers")
        if any(s.dim != self.dim for s in samplers):
            raise InputError("sampler dimension differs from spec dim")
        object.__setattr__(self, "samplers", samplers)
        if self.general_position not in ("allow", "require"):
            raise InputError("general_position must be 'allow' or 'require'")
        if self.coincide_last_two:
            if sizes[-1] != sizes[-2]:
                raise InputError("coinciding classes must have equal sizes")
            if samplers[-1] != samplers[-2]:
                raise InputError("coinciding classes must share one sampler")

    def spec(self) -> dict:
        return {
            "dim": self.dim,
            "sizes": list(self.sizes),
            "samplers": [s.spec() for s in self.samplers],
            "coincide_last_two": self.coincide_last_two,
            "general_position": self.general_position,
        }


def generation_spec_from_dict(raw: dict) -> GenerationSpec:
    try:
        dim = int(raw["dim"])
        sizes = tuple(raw["sizes"])
    except KeyError as exc:
        raise InputError(f"generation spec missing field {exc}") from exc
    samplers = tuple(
        sampler_from_spec(s) for s in raw.get("samplers", [])
    )
    return GenerationSpec(
        dim=dim,
        sizes=sizes,
        samplers=samplers,
        coincide_last_two=bool(raw.get("coincide_last_two", False)),
        general_position=raw.get("general_position", "allow"),
        max_retries=int(raw.get("max_retries", 16)),
    )


def unique_rows(points: np.ndarray) -> np.ndarray:
    return np.unique(points, axis=0)


def in_general_position(cfg: ColoredConfiguration) -> bool:
    """No d+1 of the distinct coordinate values affinely dependent.

    Repeated coordinates (for example coinciding classes) are allowed; the
    check applies to the deduplicated point set.
    """
    pts = unique_rows(cfg.all_points())
    rows = [tuple(r) for r in pts.tolist()]
    d = cfg.dim
    if len(rows) <= d:
        return True
    import itertools

    for subset in itertools.combinations(rows, d + 1):
        if predicates.orientation_sign(subset) == 0:
            return False
    return True


def _draw(spec: GenerationSpec, seed: int, attempt: int) -> ColoredConfiguration:
    classes = []
    for i in range(spec.dim + 1):
        if spec.coincide_last_two and i == spec.dim:
            classes.append(classes[-1].copy())
            continue
        rng = np.random.default_rng(np.random.SeedSequence((seed, attempt, i)))
        classes.append(spec.samplers[i].sample(rng, spec.sizes[i]))
    return ColoredConfiguration(classes)


def generate(spec: GenerationSpec | dict, seed: int) -> ColoredConfiguration:
    """Deterministic configuration for (spec, seed).

    With general_position='require', degenerate draws are retried with fresh
    jitter up to max_retries times before raising.
    """
    if isinstance(spec, dict):
        spec = generation_spec_from_dict(spec)
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise InputError("seed must fit in uint64")
    cfg = _draw(spec, seed, 0)
    if spec.general_position != "require":
        return cfg
    for attempt in range(spec.max_retries + 1):
        if attempt:
            cfg = _draw(spec, seed, attempt)
        if in_general_position(cfg):
            return cfg
    raise DegeneracyError(
        f"could not reach general position after {spec.max_retries} retries"
    )
