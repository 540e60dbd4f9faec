import logging

import click

import rodeo.commands._config  # noqa: F401
from rodeo.catalog import catalog
from rodeo.commands._common import emit, parse_prior, rodeo_errors
from rodeo.reproduce import time_criteria

logger = logging.getLogger(__name__)


def parse_range(text):
    """
    'a..b' (inclusive) or a single integer.
    """
    low, sep, high = text.partition("..")
    try:
        low = int(low)
        high = int(high) if sep else low
    except ValueError:
        raise click.BadParameter(f"{text!r} is not a range like 2..5", param_hint="--k-range")
    if low < 1 or high < low:
        raise click.BadParameter(f"{text!r} is an empty range", param_hint="--k-range")
    return list(range(low, high + 1))


@click.command()
@click.option("--k-range", "k_range", default="2..5", help="Projection sizes, inclusive")
@click.option("--group", default="B", help="Catalog group timed")
@click.option("--alpha", default=0.5, type=float, help="Blend weight of I_s against A_s")
@click.option("--prior", default="equal", help="'equal', 'pi1=..,pi2=..' or JSON")
@click.option("--pretty", is_flag=True, help="Render a table instead of JSON Lines")
@rodeo_errors
def timing(k_range, group, alpha, prior, pretty):
    """Time exact against approximate projection averages on a catalog group."""
    designs = catalog.group(group)
    ks = parse_range(k_range)
    m = min(d.factors for d in designs)
    if ks[-1] > m:
        raise click.BadParameter(f"k must not exceed {m} factors", param_hint="--k-range")
    records = time_criteria(designs, ks, alpha=alpha, prior=parse_prior(prior))
    emit([r.to_dict() for r in records], pretty)
