"""Command line front end.

Exit codes: 0 success, 1 input error (bad file, bad flag), 2 verification failure.
"""

from __future__ import annotations

import sys

import click

from .io import ModuleFormatError, bmodule_to_json, dump_json, load_module
from .modules import hilbert_series
from .regularity import betti_table, is_saturated, regularity_report, saturation_interval
from .sections import EngineDisagreement, cross_verify, pushforward, twisted_global_sections


class VerificationFailed(Exception):
    pass


def _emit(obj: dict, out: str | None):
    text = dump_json(obj, out)
    if not out:
        click.echo(text)


_input = click.option("-i", "--input", "path", required=True, type=click.Path(dir_okay=False),
                      help="Module in the JSON format.")
_output = click.option("-o", "--output", "out", default=None, type=click.Path(dir_okay=False),
                       help="Write the JSON report here instead of stdout.")
_engine = click.option("--engine", type=click.Choice(["ideal-transform", "bgg", "both"]),
                       default="ideal-transform", show_default=True)
_strategy = click.option("--strategy", type=click.Choice(["power", "frobenius", "iterated"]),
                         default="power", show_default=True)


@click.group()
def cli():
    """Twisted global sections of graded modules over B[x0..xn]."""


@cli.command()
@_input
@click.option("--truncate", "d", default=0, show_default=True, type=int, help="Truncation degree d <= 0.")
@click.option("--json", "as_json", is_flag=True, help="Print a JSON report.")
def regularity(path, d, as_json):
    """Betti table, reg, linreg and the saturation interval."""
    M = load_module(path)
    rep = regularity_report(M, d)
    bt = betti_table(M)
    interval = saturation_interval(M, d)
    sat = is_saturated(M, d)[0]
    if as_json:
        _emit({"betti": bt.to_json(), "regularity": rep.to_json(), "interval": interval.to_json(),
               "saturated": sat}, None)
        return
    click.echo(bt.render())
    click.echo(f"reg: {rep.reg}")
    click.echo(f"linreg: {rep.linreg}")
    click.echo(f"linreg_{d}: {rep.truncated_linreg[1]}")
    click.echo(f"saturation interval at d={d}: [{interval.delta0}, {interval.delta1}]")
    click.echo(f"saturated: {'yes' if sat else 'no'}")


def _sections_json(res) -> dict:
    out = res.to_json()
    top = out["module"]["generatorDegrees"]
    lo = res.d
    hi = max(top, default=lo) + res.module.ctx.n + 2
    out["hilbert"] = {"from": lo, "values": [to_json_hf(h) for h in hilbert_series(res.module, lo, hi)]}
    return out


def to_json_hf(h):
    return h if isinstance(h, int) else bmodule_to_json(h)


def _run_sections(path, d, engine, strategy, out):
    M = load_module(path)
    if engine == "both":
        try:
            a, b, rep = twisted_global_sections(M, d, "both", strategy)
        except EngineDisagreement as exc:
            _emit({"agreement": False, "report": exc.report.to_json()}, out)
            raise VerificationFailed(str(exc)) from exc
        _emit({"agreement": True, "ideal-transform": _sections_json(a), "bgg": _sections_json(b),
               "report": rep.to_json()}, out)
        return
    res = twisted_global_sections(M, d, engine, strategy, reports=True)
    _emit(_sections_json(res), out)


@cli.command()
@_input
@_output
@_engine
@_strategy
@click.option("--truncate", "d", default=0, show_default=True, type=int)
def saturate(path, out, engine, strategy, d):
    """Saturate (compute D_{m,>=d}) with the chosen engine."""
    _run_sections(path, d, engine, strategy, out)


@cli.command()
@_input
@_output
@_engine
@_strategy
@click.option("--twist-min", "d", default=0, show_default=True, type=int,
              help="Lowest twist d of the sections module.")
def sections(path, out, engine, strategy, d):
    """The module of twisted global sections in twists >= d."""
    _run_sections(path, d, engine, strategy, out)


@cli.command(name="pushforward")
@_input
@_output
@click.option("--engine", type=click.Choice(["ideal-transform", "bgg"]), default="ideal-transform",
              show_default=True)
def pushforward_cmd(path, out, engine):
    """The direct image: degree-0 part of the sections as a B-module."""
    M = load_module(path)
    res = pushforward(M, engine)
    _emit(res.to_json(), out)


@cli.command()
@click.option("-i", "--input", "path", default=None, type=click.Path(dir_okay=False),
              help="Verify one module; without it the seeded random corpus is used.")
@click.option("--truncate", "d", default=0, show_default=True, type=int)
@click.option("--corpus-size", default=25, show_default=True, type=int)
@click.option("--seed", default=20240611, show_default=True, type=int)
@click.option("--prime", default=32003, show_default=True, type=int,
              help="Characteristic of the corpus base field (0 for Q).")
@_output
def verify(path, d, corpus_size, seed, prime, out):
    """Cross-check both engines (Hilbert functions, saturation, Betti tables, counts)."""
    from .corpus import corpus
    from .rings import BaseRing, Field

    if path:
        modules = [load_module(path)]
    else:
        modules = corpus(corpus_size, seed, BaseRing(Field(prime)))
    reports = []
    failed = 0
    for k, M in enumerate(modules):
        rep = cross_verify(M, d)
        reports.append(rep.to_json())
        failed += not rep.ok
        click.echo(f"[{k}] {'ok' if rep.ok else 'FAIL'}: {rep.summary()}", err=True)
    _emit({"modules": len(modules), "failed": failed, "reports": reports}, out)
    if failed:
        raise VerificationFailed(f"{failed} of {len(modules)} modules failed")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="twisted-sections", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except (ModuleFormatError, OSError, ValueError) as exc:
        click.echo(f"input error: {exc}", err=True)
        return 1
    except VerificationFailed as exc:
        click.echo(f"verification failed: {exc}", err=True)
        return 2
    return 0


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
