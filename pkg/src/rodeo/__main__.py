import importlib
import pkgutil
import sys

import click
from click.core import Command, Group

import rodeo.commands


def build_group():
    main = Group(chain=False)

    for _, modname, _ in pkgutil.iter_modules(rodeo.commands.__path__):
        module = importlib.import_module(f"rodeo.commands.{modname}")
        commands = [v for v in module.__dict__.values() if isinstance(v, Command)]
        for command in commands:
            main.add_command(command)

    return main


def main_entry():
    main = build_group()
    try:
        rv = main.main(prog_name="rodeo", standalone_mode=False)
    except click.ClickException as e:
        # Usage errors exit 1 like any other failure; 2 is kept for reproduction mismatches.
        e.show()
        sys.exit(1)
    except click.Abort:
        click.echo("Aborted!", err=True)
        sys.exit(1)
    sys.exit(rv if isinstance(rv, int) else 0)


if __name__ == "__main__":
    main_entry()
