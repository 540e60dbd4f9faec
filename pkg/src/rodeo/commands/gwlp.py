import logging
import math

import click

import rodeo.commands._config  # noqa: F401
from rodeo.commands._common import emit, resolve_designs, rodeo_errors
from rodeo.design import e_s2, resolution
from rodeo.design import gwlp as wordlength_pattern

logger = logging.getLogger(__name__)


@click.command()
@click.argument("designs", nargs=-1)
@click.option("--fixture", multiple=True, help="Catalog design name, e.g. N_6")
@click.option("--max_order", default=None, type=int, help="Longest word length computed")
@click.option("--pretty", is_flag=True, help="Render a table instead of JSON Lines")
@rodeo_errors
def gwlp(designs, fixture, max_order, pretty):
    """Generalized wordlength pattern, E(s^2) and resolution of designs."""
    records = []
    for d in resolve_designs(designs, fixture):
        pattern = wordlength_pattern(d, max_order=max_order)
        r = resolution(pattern)
        records.append(
            {
                "label": d.label,
                "N": d.runs,
                "m": d.factors,
                "gwlp": list(pattern.b),
                "es2": e_s2(d) if d.factors > 1 else None,
                "resolution": None if math.isinf(r) else r,
            }
        )
    emit(records, pretty)
