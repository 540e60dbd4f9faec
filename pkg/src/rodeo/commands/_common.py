"""
Helpers shared by the subcommands: design resolution, option parsing and
report output.
"""
import functools
import logging
import os
import sys

import click

from rodeo.catalog import catalog
from rodeo.exceptions import RodeoException
from rodeo.models import PriorSpec
from rodeo.storage import read_design, records_frame, write_records

logger = logging.getLogger(__name__)


def rodeo_errors(func):
    """
    Report library errors as a one-line message on stderr with exit code 1.
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except RodeoException as e:
            logger.debug(f"{type(e).__name__}: {e}")
            raise click.ClickException(str(e))

    return wrapper


def resolve_designs(sources, fixtures=()):
    """
    Designs named by file paths or fixture names, in input order.
    """
    designs = []
    for source in sources:
        if os.path.exists(source):
            designs.append(read_design(source))
        elif source in catalog:
            designs.append(catalog.load(source))
        else:
            raise click.UsageError(f"{source!r} is neither a design file nor a fixture.")
    designs.extend(catalog.load(name) for name in fixtures)
    if not designs:
        raise click.UsageError("Give at least one design file or --fixture.")
    return designs


def parse_k(text, m):
    """
    Projection size from an option value: an integer or 'm' for all factors.
    """
    if str(text).lower() == "m":
        return m
    try:
        k = int(text)
    except ValueError:
        raise click.BadParameter(f"{text!r} is not an integer or 'm'.", param_hint="--k")
    if not 1 <= k <= m:
        raise click.BadParameter(f"k={k} must lie in 1..{m}.", param_hint="--k")
    return k


def parse_prior(text):
    try:
        return PriorSpec.parse(text)
    except RodeoException as e:
        raise click.BadParameter(str(e), param_hint="--prior")


def emit(records, pretty=False):
    """
    Write records to stdout as JSON Lines, or as a table when `pretty` is set.
    """
    records = list(records)
    if pretty:
        click.echo(records_frame(records).to_string(index=False))
    else:
        write_records(records, sys.stdout)
