import logging
import math
from concurrent import futures

import click

import rodeo.commands._config  # noqa: F401
from rodeo.commands._common import emit, parse_k, parse_prior, resolve_designs, rodeo_errors
from rodeo.criteria import (
    HARMONIC_MODES,
    average_tilde_criteria,
    projection_average_exact,
)
from rodeo.models import MaximalModel, weight_table

logger = logging.getLogger(__name__)


def evaluate_design(d, k, alpha, prior, mode, harmonic=None, order=2, verbose=False):
    """
    Criteria of one design averaged over its k-factor projections.

    :param mode: 'approx', 'exact' or 'both'.
    :return: A flat record.
    """
    maximal = MaximalModel.second_order(k) if order == 2 else MaximalModel.first_order(k)
    engine = "auto" if mode == "approx" else "enumerated"
    weights = weight_table(maximal, prior, d.runs, engine=engine)

    record = {"label": d.label, "N": d.runs, "m": d.factors, "k": k, "alpha": alpha}
    if mode in ("approx", "both"):
        tilde = average_tilde_criteria(d, k, weights, alpha)
        record.update(
            tilde_p=tilde.tilde_p, tilde_a=tilde.tilde_a, tilde_i=tilde.tilde_i
        )
    if mode in ("exact", "both"):
        p_alpha, reports = projection_average_exact(
            d, k, weights, alpha, harmonic=harmonic, per_model=verbose, full_output=True
        )
        record.update(
            p_alpha=p_alpha,
            a_s=math.fsum(r.a_s for r in reports) / len(reports),
            i_s=math.fsum(r.i_s for r in reports) / len(reports),
            used_harmonic=any(r.used_harmonic for r in reports),
            n_inestimable=sum(r.n_inestimable for r in reports),
        )
        if verbose:
            record["per_model"] = [
                {
                    "projection": i,
                    "model": t.model.name,
                    "weight": t.weight,
                    "trace_h": t.trace_h,
                    "trace_ig": t.trace_ig,
                }
                for i, r in enumerate(reports)
                for t in r.per_model or ()
            ]
    return record


@click.command()
@click.argument("designs", nargs=-1)
@click.option("--fixture", multiple=True, help="Catalog design name, e.g. B_1")
@click.option("--k", "ks", multiple=True, default=["m"], help="Projection size or 'm'")
@click.option("--alpha", default=0.5, type=float, help="Blend weight of I_s against A_s")
@click.option("--prior", default="equal", help="'equal', 'pi1=..,pi2=..' or JSON")
@click.option("--approx", "mode", flag_value="approx", default=True, help="Approximate criteria")
@click.option("--exact", "mode", flag_value="exact", help="Exact criteria")
@click.option("--both", "mode", flag_value="both", help="Exact and approximate criteria")
@click.option(
    "--harmonic",
    type=click.Choice(HARMONIC_MODES),
    default=None,
    help="Harmonic-mean policy of the exact criteria (config default when unset)",
)
@click.option("--order", default=2, type=click.IntRange(1, 2), help="Maximal model order")
@click.option("--n_workers", default=1, type=int, help="Designs evaluated in parallel")
@click.option("--verbose", "-v", is_flag=True, help="Include per-model exact detail")
@click.option("--pretty", is_flag=True, help="Render a table instead of JSON Lines")
@rodeo_errors
def evaluate(
    designs, fixture, ks, alpha, prior, mode, harmonic, order, n_workers, verbose, pretty
):
    """Evaluate robust criteria of designs, one record per (design, k)."""
    prior = parse_prior(prior)
    tasks = []
    for d in resolve_designs(designs, fixture):
        for text in ks:
            k = parse_k(text, d.factors)
            tasks.append((d, k, alpha, prior, mode, harmonic, order, verbose))

    if n_workers <= 1:
        records = [evaluate_design(*task) for task in tasks]
    else:
        with futures.ProcessPoolExecutor(n_workers) as executor:
            records = list(executor.map(evaluate_design, *zip(*tasks)))
    emit(records, pretty)
