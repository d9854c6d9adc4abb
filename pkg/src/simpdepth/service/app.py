"""HTTP facade over the core library.

Every endpoint is a thin adapter: decode the request model, call the same
functions the CLI uses, encode the result.  Domain errors map to 422
(invalid input / degenerate geometry) or 409 (extraction exhausted).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .._version import __version__
from ..depth import colorful_depth_exact, colorful_depth_mc
from ..errors import (
    DegeneracyError,
    ExtractionExhausted,
    InputError,
    SimpdepthError,
)
from ..io import configuration_hash, configuration_text
from ..samplers import generate, generation_spec_from_dict, sampler_from_spec
from ..selection import bound, find_deep_point, verify_selection
from ..tverberg import extract
from .models import (
    BoundsResponse,
    ConfigurationModel,
    DeepestRequest,
    DeepestResponse,
    DepthRequest,
    DepthResponse,
    GenerateRequest,
    GenerateResponse,
    MCEstimateModel,
    MCRequest,
    RationalModel,
    TverbergPartModel,
    TverbergRequest,
    TverbergResponse,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(title="simpdepth", version=__version__)


@app.exception_handler(ExtractionExhausted)
def _extraction_exhausted_handler(request: Request, exc: ExtractionExhausted):
    return JSONResponse(
        status_code=409,
        content={
            "detail": str(exc),
            "code": exc.code,
            "parts_found": len(exc.parts),
        },
    )


@app.exception_handler(InputError)
@app.exception_handler(DegeneracyError)
def _input_error_handler(request: Request, exc: SimpdepthError):
    return JSONResponse(status_code=422, content={"detail": str(exc), "code": exc.code})


@app.get("/healthz")
def healthz():
    return {"status": "ok", "version": __version__}


@app.get("/v1/bounds/{d}", response_model=BoundsResponse)
def get_bounds(d: int):
    general = bound(d, "general")
    two = bound(d, "two-coincide")
    return BoundsResponse(
        d=d,
        general=RationalModel.from_fraction(general.value),
        general_float=float(general.value),
        two_coincide=RationalModel.from_fraction(two.value),
        two_coincide_float=float(two.value),
    )


@app.post("/v1/depth", response_model=DepthResponse)
def post_depth(req: DepthRequest):
    cfg = req.configuration.to_config()
    rep = colorful_depth_exact(cfg, req.point)
    return DepthResponse(
        point=list(req.point),
        containing=rep.containing,
        total=rep.total,
        fraction=RationalModel.from_fraction(rep.fraction),
        fraction_float=rep.fraction_float,
        config_hash=configuration_hash(cfg),
    )


@app.post("/v1/deepest", response_model=DeepestResponse)
def post_deepest(req: DeepestRequest):
    cfg = req.configuration.to_config()
    dp = find_deep_point(
        cfg, req.strategy, candidates=req.candidates, seed=req.seed
    )
    return DeepestResponse(
        point=list(dp.point.coords),
        containing=dp.report.containing,
        total=dp.report.total,
        fraction=RationalModel.from_fraction(dp.report.fraction),
        fraction_float=dp.report.fraction_float,
        strategy=dp.strategy,
        certified=dp.certified,
        candidates_evaluated=dp.candidates_evaluated,
        max_count=dp.max_count,
        max_fraction=(
            RationalModel.from_fraction(dp.max_fraction)
            if dp.max_fraction is not None
            else None
        ),
        config_hash=configuration_hash(cfg),
    )


@app.post("/v1/verify", response_model=VerifyResponse)
def post_verify(req: VerifyRequest):
    if (req.configuration is None) == (req.samplers is None):
        raise InputError("provide exactly one of configuration or samplers")
    if req.configuration is not None:
        target = req.configuration.to_config()
    else:
        target = [sampler_from_spec(s) for s in req.samplers]
    vr = verify_selection(
        target,
        kind=req.kind,
        tolerance=req.tolerance,
        strategy=req.strategy,
        candidates=req.candidates,
        seed=req.seed,
        mc_samples=req.mc_samples,
        proxy_size=req.proxy_size,
    )
    return VerifyResponse(
        passed=vr.passed,
        dim=vr.dim,
        kind=vr.kind,
        bound=RationalModel.from_fraction(vr.bound.value),
        tolerance=RationalModel.from_fraction(vr.tolerance),
        achieved=RationalModel.from_fraction(vr.achieved),
        achieved_float=float(vr.achieved),
        witness=list(vr.witness.coords),
        strategy=vr.strategy,
        certified=vr.certified,
        candidates_evaluated=vr.candidates_evaluated,
        max_fraction=(
            RationalModel.from_fraction(vr.max_fraction)
            if vr.max_fraction is not None
            else None
        ),
        config_hash=vr.config_hash,
        mc=(
            MCEstimateModel(
                samples=vr.mc.samples,
                hits=vr.mc.hits,
                estimate=vr.mc.estimate,
                ci_low=vr.mc.ci_low,
                ci_high=vr.mc.ci_high,
                seed=vr.mc.seed,
            )
            if vr.mc is not None
            else None
        ),
    )


@app.post("/v1/tverberg", response_model=TverbergResponse)
def post_tverberg(req: TverbergRequest):
    cfg = req.configuration.to_config()
    cert = extract(
        cfg,
        req.r,
        best_effort=req.best_effort,
        strategy=req.strategy,
        candidates=req.candidates,
        seed=req.seed,
    )
    return TverbergResponse(
        witness=list(cert.witness.coords),
        parts=[
            TverbergPartModel(
                indices=list(part.indices),
                vertices=[list(v.coords) for v in part.vertices],
            )
            for part in cert.parts
        ],
        guaranteed=cert.guaranteed,
        depth_fraction=RationalModel.from_fraction(cert.depth_fraction),
        config_hash=configuration_hash(cfg),
    )


@app.post("/v1/mc", response_model=MCEstimateModel)
def post_mc(req: MCRequest):
    samplers = [sampler_from_spec(s) for s in req.samplers]
    est = colorful_depth_mc(
        samplers, req.point, req.samples, req.seed, threads=req.threads
    )
    return MCEstimateModel(
        samples=est.samples,
        hits=est.hits,
        estimate=est.estimate,
        ci_low=est.ci_low,
        ci_high=est.ci_high,
        seed=est.seed,
    )


@app.post("/v1/generate", response_model=GenerateResponse)
def post_generate(req: GenerateRequest):
    spec = generation_spec_from_dict(req.spec)
    cfg = generate(spec, req.seed)
    return GenerateResponse(
        configuration=ConfigurationModel.from_config(cfg),
        config_hash=configuration_hash(cfg),
        text=configuration_text(cfg),
    )
