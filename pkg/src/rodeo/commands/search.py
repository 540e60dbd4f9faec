import json
import logging
import sys

import click

import rodeo.commands._config  # noqa: F401
from rodeo.commands._common import emit, parse_prior, resolve_designs, rodeo_errors
from rodeo.models import PriorSpec
from rodeo.search import SearchConfig, cpw_search
from rodeo.storage import DesignFile, dumps, save_design

logger = logging.getLogger(__name__)

# Options that map one-to-one onto SearchConfig fields
_FIELDS = (
    "k",
    "alpha",
    "g",
    "restarts",
    "seed",
    "max_sweeps",
    "order",
    "engine",
    "subsample",
    "n_workers",
)


def search_config(settings, options, start_designs=None):
    """
    Merge a JSON settings dict with command-line options; options win.
    """
    merged = dict(settings)
    for key, value in options.items():
        if value is not None:
            merged[key] = value

    for key in ("runs", "factors", "k"):
        if merged.get(key) is None:
            raise click.UsageError(f"--{key} is required (flag or config file).")

    if merged.get("pi1") is not None or merged.get("pi2") is not None:
        prior = PriorSpec.hierarchical(merged.get("pi1"), merged.get("pi2"))
    elif isinstance(merged.get("prior"), dict):
        prior = PriorSpec.from_dict(merged["prior"])
    else:
        prior = parse_prior(merged.get("prior") or "equal")

    kwargs = {f: merged[f] for f in _FIELDS if merged.get(f) is not None}
    return SearchConfig(
        n_runs=merged["runs"],
        n_factors=merged["factors"],
        prior=prior,
        start_designs=start_designs,
        **kwargs,
    )


@click.command()
@click.option("--config", "config_file", default=None, help="JSON file of search settings")
@click.option("--runs", default=None, type=int, help="Run size N")
@click.option("--factors", default=None, type=int, help="Number of factors m")
@click.option("--k", default=None, type=int, help="Projection size")
@click.option("--alpha", default=None, type=float, help="Blend weight of I_s against A_s")
@click.option("--pi1", default=None, type=float, help="Main-effect inclusion probability")
@click.option("--pi2", default=None, type=float, help="Interaction inclusion probability")
@click.option("--g", default=None, type=int, help="Columns tried per sweep")
@click.option("--restarts", default=None, type=int, help="Independent restarts")
@click.option("--seed", default=None, type=int, help="Master random seed")
@click.option("--max_sweeps", default=None, type=int, help="Sweep limit per restart")
@click.option("--order", default=None, type=click.IntRange(1, 2), help="Maximal model order")
@click.option("--engine", default=None, type=click.Choice(["auto", "words", "direct"]))
@click.option("--subsample", default=None, type=float, help="Share of projections scored")
@click.option("--n_workers", default=None, type=int, help="Restarts run in parallel")
@click.option("--start", multiple=True, help="Starting design file or fixture")
@click.option("--output", default=None, help="Design file to write (stdout when unset)")
@click.option(
    "--trace",
    default=None,
    help="JSON file for the search trace (stderr when the design goes to stdout)",
)
@click.option("--progress", is_flag=True, help="Show a progress bar over restarts")
@rodeo_errors
def search(config_file, start, output, trace, progress, **options):
    """Search for a robust design with the columnwise-pairwise algorithm."""
    settings = {}
    if config_file:
        with open(config_file, "r", encoding="utf8") as f:
            settings = json.load(f)
        logger.info(f"Read search settings from {config_file}")

    start_designs = resolve_designs(start) if start else None
    cfg = search_config(settings, options, start_designs)

    design, best = cpw_search(cfg, show_progress=progress)
    if output:
        save_design(design, output)
    else:
        DesignFile.save(design, sys.stdout)

    record = dict(best.to_dict(), label=design.label, prior=cfg.prior.to_dict())
    if trace:
        with open(trace, "w", encoding="utf8") as f:
            json.dump(record, f, indent=2)
    elif output:
        emit([record])
    else:
        # stdout carries the design
        click.echo(dumps(record), err=True)
