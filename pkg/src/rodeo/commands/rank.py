import logging

import click

import rodeo.commands._config  # noqa: F401
from rodeo.catalog import catalog
from rodeo.commands._common import (
    emit,
    parse_k,
    parse_prior,
    resolve_designs,
    rodeo_errors,
)
from rodeo.commands.evaluate import evaluate_design
from rodeo.reproduce import rank_report

logger = logging.getLogger(__name__)

_VALUE_KEYS = {"exact": "p_alpha", "approx": "tilde_p"}


def _compare(text):
    names = tuple(text.split(":"))
    if len(names) != 2 or not set(names) <= set(_VALUE_KEYS):
        raise click.BadParameter(
            f"{text!r} must look like exact:approx", param_hint="--compare"
        )
    return names


@click.command()
@click.argument("designs", nargs=-1)
@click.option("--fixture", multiple=True, help="Catalog design name, e.g. B_1")
@click.option("--group", default=None, help="Rank a whole catalog group (A, B or N)")
@click.option("--k", default="m", help="Projection size or 'm'")
@click.option("--alpha", default=0.5, type=float, help="Blend weight of I_s against A_s")
@click.option("--prior", default="equal", help="'equal', 'pi1=..,pi2=..' or JSON")
@click.option("--harmonic", default=None, help="Harmonic-mean policy of exact criteria")
@click.option("--compare", default="exact:approx", help="Two criteria to rank by")
@click.option("--decimals", default=None, type=int, help="Rounding before ranking")
@click.option("--pretty", is_flag=True, help="Render a table instead of JSON Lines")
@rodeo_errors
def rank(
    designs, fixture, group, k, alpha, prior, harmonic, compare, decimals, pretty
):
    """Rank designs under two criteria and report their rank correlation."""
    first, second = _compare(compare)
    prior = parse_prior(prior)
    fixture = tuple(fixture) + (tuple(catalog.names(group)) if group else ())
    designs = resolve_designs(designs, fixture)
    if len(designs) < 2:
        raise click.UsageError("Ranking needs at least two designs.")

    mode = "both" if first != second else first
    values = {first: [], second: []}
    for d in designs:
        record = evaluate_design(d, parse_k(k, d.factors), alpha, prior, mode, harmonic)
        for name in values:
            values[name].append(record[_VALUE_KEYS[name]])

    names = (first, second) if first != second else (first, f"{second}_again")
    report = rank_report(
        [d.label for d in designs],
        values[first],
        values[second],
        names=names,
        decimals=decimals,
    )
    records = list(report.to_records())
    emit(records, pretty)
    emit([{"k": k, "compare": compare, "correlation": report.correlation}], pretty)
