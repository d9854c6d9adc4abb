"""Command-line interface: one subcommand per run mode plus `serve`.

Exit codes: 0 success/pass, 1 verification or extraction failure, 2 bad
input (malformed files, invalid parameters, degenerate geometry).
"""

from __future__ import annotations

import json
import sys

import click

from ._version import __version__
from .errors import (
    CertificationError,
    DegeneracyError,
    ExtractionExhausted,
    InputError,
)
from .io import report_json
from .runner import MODES, SAMPLER_KINDS, RunConfig, run


def _parse_point(ctx, param, value):
    if value is None:
        return None
    try:
        return tuple(float(tok) for tok in value.split(","))
    except ValueError:
        raise click.BadParameter(f"expected comma-separated floats, got {value!r}")


def _instance_options(fn):
    for option in reversed(
        [
            click.option(
                "--input",
                "input_path",
                type=click.Path(exists=True, dir_okay=False),
                default=None,
                help="Read the instance from a configuration file instead of generating.",
            ),
            click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True),
            click.option("--dim", type=click.IntRange(1), default=2, show_default=True),
            click.option(
                "--classes",
                type=click.IntRange(2),
                default=None,
                help="Class count (must equal dim+1; informational validation).",
            ),
            click.option("--size", type=click.IntRange(1), default=30, show_default=True),
            click.option(
                "--kind",
                type=click.Choice(["general", "two-coincide"]),
                default="general",
                show_default=True,
            ),
            click.option(
                "--sampler",
                type=click.Choice(list(SAMPLER_KINDS)),
                default="uniform-box",
                show_default=True,
            ),
        ]
    ):
        fn = option(fn)
    return fn


def _out_option(fn):
    return click.option(
        "--out",
        type=click.Path(dir_okay=False, writable=True),
        default=None,
        help="Also write the result to this path.",
    )(fn)


def _execute(rc: RunConfig) -> dict:
    try:
        return run(rc)
    except ExtractionExhausted as exc:
        _emit_error(exc, parts_found=len(exc.parts))
        sys.exit(1)
    except CertificationError as exc:
        _emit_error(exc)
        sys.exit(1)
    except (InputError, DegeneracyError) as exc:
        _emit_error(exc)
        sys.exit(2)


def _emit_error(exc, **extra) -> None:
    payload = {"error": {"code": exc.code, "detail": str(exc), **extra}}
    click.echo(json.dumps(payload, sort_keys=True), err=True)


def _emit(report: dict) -> None:
    click.echo(report_json(report), nl=False)


@click.group()
@click.version_option(__version__)
def main():
    """Colorful simplicial depth: exact counting, certified deep points,
    bound verification, and greedy disjoint-simplex extraction."""


@main.command()
@_instance_options
@_out_option
def gen(input_path, seed, dim, classes, size, kind, sampler, out):
    """Generate (or re-emit) an instance in the canonical text format."""
    rc = RunConfig(
        mode="gen",
        seed=seed,
        dim=dim,
        classes=classes,
        size=size,
        kind=kind,
        sampler=sampler,
        input_path=input_path,
        out=out,
    )
    report = _execute(rc)
    if out:
        _emit(report)
    else:
        click.echo(report["results"]["text"], nl=False)


@main.command()
@_instance_options
@_out_option
@click.option(
    "--point",
    callback=_parse_point,
    required=True,
    help="Query point as comma-separated coordinates.",
)
def depth(input_path, seed, dim, classes, size, kind, sampler, out, point):
    """Exact colorful depth of a query point."""
    rc = RunConfig(
        mode="depth",
        seed=seed,
        dim=dim,
        classes=classes,
        size=size,
        kind=kind,
        sampler=sampler,
        input_path=input_path,
        out=out,
        point=point,
    )
    _emit(_execute(rc))


@main.command()
@_instance_options
@_out_option
@click.option("--strategy", default="auto", show_default=True)
@click.option("--candidates", type=click.IntRange(1), default=512, show_default=True)
def deepest(input_path, seed, dim, classes, size, kind, sampler, out, strategy, candidates):
    """Search for a depth-maximizing point."""
    rc = RunConfig(
        mode="deepest",
        seed=seed,
        dim=dim,
        classes=classes,
        size=size,
        kind=kind,
        sampler=sampler,
        input_path=input_path,
        out=out,
        strategy=strategy,
        candidates=candidates,
    )
    _emit(_execute(rc))


@main.command()
@_instance_options
@_out_option
@click.option("--strategy", default="auto", show_default=True)
@click.option("--tolerance", default=None, help="Rational like 1/10 or decimal like 0.02.")
@click.option("--instances", type=click.IntRange(1), default=1, show_default=True)
@click.option("--candidates", type=click.IntRange(1), default=512, show_default=True)
@click.option("--threads", type=click.IntRange(1), default=1, show_default=True)
def verify(
    input_path, seed, dim, classes, size, kind, sampler, out,
    strategy, tolerance, instances, candidates, threads,
):
    """Check instances against the depth bound; exit 1 on any failure."""
    rc = RunConfig(
        mode="verify",
        seed=seed,
        dim=dim,
        classes=classes,
        size=size,
        kind=kind,
        sampler=sampler,
        input_path=input_path,
        out=out,
        strategy=strategy,
        tolerance=tolerance,
        instances=instances,
        candidates=candidates,
        threads=threads,
    )
    report = _execute(rc)
    _emit(report)
    if not report.get("passed", False):
        sys.exit(1)


@main.command()
@_instance_options
@_out_option
@click.option("-r", "--r", "r", type=click.IntRange(1), default=2, show_default=True)
@click.option("--best-effort", is_flag=True, default=False)
@click.option("--strategy", default="auto", show_default=True)
@click.option("--candidates", type=click.IntRange(1), default=512, show_default=True)
def tverberg(
    input_path, seed, dim, classes, size, kind, sampler, out,
    r, best_effort, strategy, candidates,
):
    """Extract r vertex-disjoint rainbow simplices over one deep point."""
    rc = RunConfig(
        mode="tverberg",
        seed=seed,
        dim=dim,
        classes=classes,
        size=size,
        kind=kind,
        sampler=sampler,
        input_path=input_path,
        out=out,
        r=r,
        best_effort=best_effort,
        strategy=strategy,
        candidates=candidates,
    )
    _emit(_execute(rc))


@main.command()
@_out_option
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--dim", type=click.IntRange(1), default=2, show_default=True)
@click.option(
    "--sampler",
    type=click.Choice(list(SAMPLER_KINDS)),
    default="gaussian",
    show_default=True,
)
@click.option(
    "--point",
    callback=_parse_point,
    default=None,
    help="Query point (defaults to the origin).",
)
@click.option("--samples", type=click.IntRange(1), default=100_000, show_default=True)
@click.option("--threads", type=click.IntRange(1), default=1, show_default=True)
def mc(out, seed, dim, sampler, point, samples, threads):
    """Monte Carlo depth estimate under d+1 identical standard measures."""
    rc = RunConfig(
        mode="mc",
        seed=seed,
        dim=dim,
        sampler=sampler,
        point=point,
        samples=samples,
        threads=threads,
        out=out,
    )
    _emit(_execute(rc))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
