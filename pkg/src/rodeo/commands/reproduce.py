import logging

import click

import rodeo.commands._config  # noqa: F401
from rodeo.commands._common import emit, rodeo_errors
from rodeo.reproduce import TABLES
from rodeo.reproduce import reproduce as run_reproduction

logger = logging.getLogger(__name__)


@click.command()
@click.option("--table", required=True, type=click.Choice(TABLES), help="Table to rebuild")
@click.option("--tol", default=None, type=float, help="Absolute tolerance for value cells")
@click.option("--slack", default=None, type=int, help="Last-digit slack on top of rounding")
@click.option("--n_workers", default=None, type=int, help="Processes for exact cells")
@click.option("--cache_dir", default=None, help="joblib cache for exact cells")
@click.option("--progress", is_flag=True, help="Show a progress bar")
@click.option("--pretty", is_flag=True, help="Render a table instead of JSON Lines")
@rodeo_errors
def reproduce(table, tol, slack, n_workers, cache_dir, progress, pretty):
    """Recompute a published table and compare every printed cell."""
    kwargs = {}
    if table == "3":
        kwargs = dict(n_workers=n_workers, cache_dir=cache_dir, show_progress=progress)
    report = run_reproduction(table, slack_ulps=slack, tol=tol, **kwargs)

    emit(report.to_records(), pretty)
    for notice in report.notices:
        click.echo(notice, err=True)
    if not report.passed:
        click.echo("Cells outside tolerance:", err=True)
        diff = report.frame()
        click.echo(diff[~diff["ok"]].to_string(index=False), err=True)
        raise click.exceptions.Exit(2)
