import logging

import click

import rodeo.commands._config  # noqa: F401
from rodeo.commands._common import (
    emit,
    parse_k,
    parse_prior,
    resolve_designs,
    rodeo_errors,
)
from rodeo.criteria import (
    bridge_coefficients,
    bridge_constant,
    bridge_projection_average,
    bridge_value,
    xi_from_weights,
)
from rodeo.design import gwlp
from rodeo.models import MaximalModel, weight_table

logger = logging.getLogger(__name__)


def bridge_record(d, k, alpha, prior, order=2):
    maximal = MaximalModel.second_order(k) if order == 2 else MaximalModel.first_order(k)
    weights = weight_table(maximal, prior, d.runs)
    coefficients = bridge_coefficients(weights, alpha)
    b = gwlp(d, max_order=len(coefficients)).prefix(len(coefficients))
    record = {
        "label": d.label,
        "N": d.runs,
        "m": d.factors,
        "k": k,
        "alpha": alpha,
        "xi": xi_from_weights(weights).to_dict(),
        "coefficients": list(coefficients),
        "gwlp": list(b),
        "constant": bridge_constant(weights, alpha),
        "tilde_p": bridge_projection_average(b, d.factors, k, weights, alpha),
    }
    if k == d.factors:
        record["value"] = bridge_value(d, weights, alpha)
    return record


@click.command()
@click.argument("designs", nargs=-1)
@click.option("--fixture", multiple=True, help="Catalog design name, e.g. A_1")
@click.option("--k", default="m", help="Projection size or 'm'")
@click.option("--alpha", default=0.5, type=float, help="Blend weight of I_s against A_s")
@click.option("--prior", default="equal", help="Symmetric prior: 'equal' or 'pi1=..,pi2=..'")
@click.option("--order", default=2, type=click.IntRange(1, 2), help="Maximal model order")
@click.option("--pretty", is_flag=True, help="Render a table instead of JSON Lines")
@rodeo_errors
def bridge(designs, fixture, k, alpha, prior, order, pretty):
    """Show the wordlength-pattern form of the approximate criterion."""
    prior = parse_prior(prior)
    records = [
        bridge_record(d, parse_k(k, d.factors), alpha, prior, order)
        for d in resolve_designs(designs, fixture)
    ]
    emit(records, pretty)
