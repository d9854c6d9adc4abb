"""Exact and Monte Carlo simplicial depth for colored point configurations.

Core capabilities:

* exact colorful/monochromatic depth counting with certified sign predicates,
* a certified planar search for depth-maximizing points,
* verification of centerpoint-style depth bounds,
* greedy extraction of vertex-disjoint rainbow simplices over a common point,
* deterministic Monte Carlo estimation with Wilson confidence intervals.
"""

from ._version import __version__
from .configuration import ColoredConfiguration
from .depth import (
    DepthReport,
    MCEstimate,
    colorful_count,
    colorful_depth_exact,
    colorful_depth_mc,
    mono_depth_2d_fast,
    mono_depth_exact,
    wilson_interval,
)
from .errors import (
    CertificationError,
    DegeneracyError,
    ExtractionExhausted,
    InputError,
    ParseError,
    SimpdepthError,
)
from .geometry import Orientation, Point, Simplex, as_point, contains, orientation
from .io import (
    configuration_hash,
    configuration_text,
    parse_configuration,
    rational_json,
    read_configuration,
    report_json,
    write_configuration,
    write_report,
)
from .runner import RunConfig, run
from .samplers import (
    GaussianSampler,
    GenerationSpec,
    MeasureSampler,
    MixtureSampler,
    PointMassSampler,
    UniformBallSampler,
    UniformBoxSampler,
    generate,
    generation_spec_from_dict,
    in_general_position,
    sampler_from_spec,
    standard_sampler,
)
from .selection import (
    BoundSpec,
    DeepPointResult,
    SegmentCrossingReport,
    VerificationReport,
    bound,
    crossing_floor,
    find_deep_point,
    segment_crossing_fraction,
    verify_selection,
)
from .tverberg import (
    TverbergCertificate,
    TverbergPart,
    asymptotic_T,
    extract,
    greedy_class_size,
    verify_certificate,
)

__all__ = [
    "__version__",
    "BoundSpec",
    "CertificationError",
    "ColoredConfiguration",
    "DeepPointResult",
    "DegeneracyError",
    "DepthReport",
    "ExtractionExhausted",
    "GaussianSampler",
    "GenerationSpec",
    "InputError",
    "MCEstimate",
    "MeasureSampler",
    "MixtureSampler",
    "Orientation",
    "ParseError",
    "Point",
    "PointMassSampler",
    "RunConfig",
    "SegmentCrossingReport",
    "Simplex",
    "SimpdepthError",
    "TverbergCertificate",
    "TverbergPart",
    "UniformBallSampler",
    "UniformBoxSampler",
    "VerificationReport",
    "as_point",
    "asymptotic_T",
    "bound",
    "colorful_count",
    "colorful_depth_exact",
    "colorful_depth_mc",
    "configuration_hash",
    "configuration_text",
    "contains",
    "crossing_floor",
    "extract",
    "find_deep_point",
    "generate",
    "generation_spec_from_dict",
    "greedy_class_size",
    "in_general_position",
    "mono_depth_2d_fast",
    "mono_depth_exact",
    "orientation",
    "parse_configuration",
    "rational_json",
    "read_configuration",
    "report_json",
    "run",
    "sampler_from_spec",
    "segment_crossing_fraction",
    "standard_sampler",
    "verify_certificate",
    "verify_selection",
    "wilson_interval",
    "write_configuration",
    "write_report",
]
