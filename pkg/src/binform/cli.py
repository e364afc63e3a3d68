"""Command-line front end."""

from __future__ import annotations

import json
import logging

import click

from . import cache
from .checks import CHECK_IDS, run_checks
from .covariants import THETA_NAMES, as_form, cayley_sylvester, hermite_at, hermite_invariant, theta, theta_at
from .forms import Form, transvectant
from .ring import ParseError, parse


def _form(text: str) -> Form:
    try:
        return Form.make(parse(text))
    except (ParseError, ValueError) as exc:
        raise click.BadParameter(f"{text!r}: {exc}") from exc


def _quintic(text: str) -> Form:
    try:
        return as_form(text)
    except (ParseError, ValueError) as exc:
        raise click.BadParameter(f"{text!r}: {exc}", param_hint="--at") from exc


@click.group()
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None,
              help=f"Cache directory (default: ${cache.ENV_VAR} or the platform cache dir).")
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def main(cache_dir, verbose):
    """Exact computations with binary forms and covariants of the binary quintic."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cache.configure(cache_dir if cache_dir else cache.default_cache_dir())


@main.command()
@click.argument("a")
@click.argument("b")
@click.argument("r", type=click.IntRange(min=0))
def transvect(a, b, r):
    """Print the r-th transvectant (A,B)_r."""
    click.echo(str(transvectant(_form(a), _form(b), r).body))


@main.command()
@click.argument("d", type=click.IntRange(min=1))
@click.argument("m", type=click.IntRange(min=0))
@click.argument("q", type=click.IntRange(min=0))
def dim(d, m, q):
    """Dimension of the covariants of degree m and order q of the d-ic."""
    click.echo(str(cayley_sylvester(d, m, q)))


@main.command()
@click.argument("name", type=click.Choice(THETA_NAMES))
@click.option("--at", "at", default=None, help="Evaluate at this quintic instead of the generic one.")
def covariant(name, at):
    """Print the catalog covariant theta_NAME of the quintic."""
    if at is None:
        click.echo(str(theta(name).form.body))
    else:
        click.echo(str(theta_at(name, _quintic(at)).form.body))


@main.command()
@click.option("--at", "at", default=None, help="Evaluate at this quintic instead of the generic one.")
def hermite(at):
    """Print the degree-18 skew invariant H (or its value at a quintic)."""
    if at is None:
        click.echo(str(hermite_invariant().form.body))
    else:
        click.echo(str(hermite_at(_quintic(at))))


def _parse_only(ctx, param, value):
    if value is None:
        return None
    ids = [v.strip() for v in value.split(",") if v.strip()]
    unknown = [i for i in ids if i not in CHECK_IDS]
    if unknown:
        raise click.BadParameter(f"unknown check ids {', '.join(unknown)}; "
                                 f"choose from {', '.join(CHECK_IDS)}")
    return ids


@main.command()
@click.option("--only", callback=_parse_only, default=None, metavar="ID[,ID...]",
              help="Run only these checks.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
              help="Checks to run concurrently.")
@click.option("--format", "fmt", type=click.Choice(["text", "structured"]), default="text",
              show_default=True)
@click.pass_context
def verify(ctx, only, jobs, fmt):
    """Run the acceptance suite; exit status 0 iff every selected check passes."""
    records = run_checks(only, jobs)
    if fmt == "structured":
        for rec in records:
            click.echo(json.dumps(rec.as_dict(), ensure_ascii=False))
    else:
        width = max(len(r.id) for r in records)
        for rec in records:
            click.echo(f"{rec.id:<{width}}  {rec.status.upper():<4}  {rec.millis:>7} ms  {rec.anchor}")
            click.echo(f"{'':<{width}}  {rec.detail}")
        passed = sum(r.status == "pass" for r in records)
        click.echo(f"{passed}/{len(records)} checks passed")
    ctx.exit(0 if all(r.status == "pass" for r in records) else 1)


if __name__ == "__main__":
    main()
