"""Pydantic request/response schemas mirroring the core result types."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from pydantic import BaseModel, Field

from ..configuration import ColoredConfiguration


class ConfigurationModel(BaseModel):
    """d+1 color classes, each a list of d-dimensional points."""

    classes: list[list[list[float]]]

    def to_config(self) -> ColoredConfiguration:
        return ColoredConfiguration(self.classes)

    @classmethod
    def from_config(cls, cfg: ColoredConfiguration) -> "ConfigurationModel":
        return cls(classes=cfg.as_lists())


class RationalModel(BaseModel):
    num: int
    den: int

    @classmethod
    def from_fraction(cls, value: Fraction) -> "RationalModel":
        return cls(num=value.numerator, den=value.denominator)


class DepthRequest(BaseModel):
    configuration: ConfigurationModel
    point: list[float]


class DepthResponse(BaseModel):
    point: list[float]
    containing: int
    total: int
    fraction: RationalModel
    fraction_float: float
    config_hash: str


class DeepestRequest(BaseModel):
    configuration: ConfigurationModel
    strategy: str = "auto"
    candidates: int = 512
    seed: int = 0


class DeepestResponse(BaseModel):
    point: list[float]
    containing: int
    total: int
    fraction: RationalModel
    fraction_float: float
    strategy: str
    certified: bool
    candidates_evaluated: int
    max_count: Optional[int] = None
    max_fraction: Optional[RationalModel] = None
    config_hash: str


class MCEstimateModel(BaseModel):
    samples: int
    hits: int
    estimate: float
    ci_low: float
    ci_high: float
    seed: int


class VerifyRequest(BaseModel):
    configuration: Optional[ConfigurationModel] = None
    samplers: Optional[list[dict]] = None
    kind: str = "general"
    tolerance: Optional[str] = None
    strategy: str = "auto"
    candidates: int = 512
    seed: int = 0
    mc_samples: int = 200_000
    proxy_size: int = 24


class VerifyResponse(BaseModel):
    passed: bool
    dim: int
    kind: str
    bound: RationalModel
    tolerance: RationalModel
    achieved: RationalModel
    achieved_float: float
    witness: list[float]
    strategy: str
    certified: bool
    candidates_evaluated: int
    max_fraction: Optional[RationalModel] = None
    config_hash: Optional[str] = None
    mc: Optional[MCEstimateModel] = None


class TverbergRequest(BaseModel):
    configuration: ConfigurationModel
    r: int = Field(ge=1)
    best_effort: bool = False
    strategy: str = "auto"
    candidates: int = 512
    seed: int = 0


class TverbergPartModel(BaseModel):
    indices: list[int]
    vertices: list[list[float]]


class TverbergResponse(BaseModel):
    witness: list[float]
    parts: list[TverbergPartModel]
    guaranteed: bool
    depth_fraction: RationalModel
    config_hash: str


class MCRequest(BaseModel):
    samplers: list[dict]
    point: list[float]
    samples: int = 100_000
    seed: int = 0
    threads: int = 1


class GenerateRequest(BaseModel):
    spec: dict
    seed: int = 0


class GenerateResponse(BaseModel):
    configuration: ConfigurationModel
    config_hash: str
    text: str


class BoundsResponse(BaseModel):
    d: int
    general: RationalModel
    general_float: float
    two_coincide: RationalModel
    two_coincide_float: float
