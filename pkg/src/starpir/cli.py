"""Command-line front end.

Codes are named with a small grammar: RM:r,m  GRS:q,n,k  REP:q,n
FIX:C1|C2|RM14-G  FILE:path.  Exit codes: 0 success, 1 validation error,
2 enumeration budget exhausted.
"""

from __future__ import annotations

import functools
import sys

import click

from .errors import BudgetExceededError, ValidationError
from .rates import rows_to_csv, series_rows
from .workflows import run_audit, run_retrieval_demo, scheme_summary


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BudgetExceededError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except ValidationError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


@click.group()
def cli():
    """Private information retrieval from star products of linear codes:
    scheme construction, an in-process protocol simulator, and exact
    collusion audits."""


@cli.command("rates")
@click.option("--series", default="fig-left", show_default=True,
              help="fig-left, fig-right, or custom")
@click.option("--m", "m", type=int, default=0,
              help="log2 of the code length (custom series)")
@click.option("--collusion", default="1,3,7",
              help="comma-separated collusion levels (custom series)")
@_guarded
def cmd_rates(series, m, collusion):
    """Emit a PIR-rate table as CSV."""
    levels = tuple(int(x) for x in collusion.split(",") if x)
    click.echo(rows_to_csv(series_rows(series, m, levels)), nl=False)


@cli.command("scheme-info")
@click.option("--code", required=True, help="storage code spec")
@click.option("--dcode", required=True, help="retrieval code spec")
@click.option("--plan", "plan_spec", default="auto", show_default=True,
              help="auto, auto-basic, auto-symmetric, auto-cyclic, or a manifest path")
@_guarded
def cmd_scheme_info(code, dcode, plan_spec):
    """Describe the scheme a code pair yields: parameters, rate, collusion."""
    summary = scheme_summary(code, dcode, plan_spec)
    for line in summary.lines():
        click.echo(line)


@cli.command("retrieve")
@click.option("--code", required=True, help="storage code spec")
@click.option("--dcode", required=True, help="retrieval code spec")
@click.option("--plan", "plan_spec", default="auto", show_default=True,
              help="auto, auto-basic, auto-symmetric, auto-cyclic, or a manifest path")
@click.option("--files", type=int, required=True, help="number of files M")
@click.option("--want", type=int, required=True, help="file to retrieve, 1-based")
@click.option("--seed", type=int, default=0, show_default=True)
@_guarded
def cmd_retrieve(code, dcode, plan_spec, files, want, seed):
    """Retrieve one file of a seed-generated database and verify it."""
    demo = run_retrieval_demo(code, dcode, plan_spec, files, want, seed)
    click.echo(f"file {demo.target} ({demo.rows_per_file} rows):")
    for row in demo.file_rows:
        click.echo("  " + " ".join(str(a) for a in row))
    click.echo(f"downloaded symbols: {demo.download_symbols}")
    click.echo(
        f"rate: {demo.rate.numerator}/{demo.rate.denominator}"
        f" (= {float(demo.rate):.10f})"
    )
    click.echo(f"verified: {'exact match' if demo.verified else 'MISMATCH'}")
    if not demo.verified:
        sys.exit(1)


@cli.command("audit")
@click.option("--dcode", required=True, help="retrieval code spec")
@click.option("--t", "t", type=int, default=0, help="coalition size")
@click.option("--exact/--bound", "exact", default=True,
              help="exhaustive count or formula bound only")
@click.option("--set", "coalition", default="",
              help="audit one coalition, e.g. 1,2,3 (1-based)")
@click.option("--csv", "csv_path", type=click.Path(), default="",
              help="also write the report as CSV")
@_guarded
def cmd_audit(dcode, t, exact, coalition, csv_path):
    """Collusion audit: exact unprotected-coalition counts or formula bounds."""
    members = tuple(int(x) for x in coalition.split(",") if x) or None
    if members is None and t <= 0:
        raise ValidationError("give --t for a size audit or --set for one coalition")
    outcome = run_audit(dcode, t, "exact" if exact else "bound", members)
    for line in outcome.lines():
        click.echo(line)
    if csv_path:
        with open(csv_path, "w") as fh:
            fh.write(outcome.csv())


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def cmd_serve(host, port):
    """Run the HTTP service wrapping the same operations."""
    import uvicorn

    uvicorn.run("starpir.service:app", host=host, port=port)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
