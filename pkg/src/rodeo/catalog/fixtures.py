import json
import logging
import re

import importlib_resources

from rodeo.catalog import data as fixture_data
from rodeo.design import parse_design
from rodeo.exceptions import WrongInput
from rodeo.utils import sha256sum

logger = logging.getLogger(__name__)

_NAME = re.compile(r"^([ABN])_?\{?(\d+)\}?$", re.IGNORECASE)

# Published fixtures, grouped in the order they are printed
GROUPS = {
    "A": [f"A_{i}" for i in range(1, 5)],
    "B": [f"B_{i}" for i in range(1, 13)],
    "N": [f"N_{n}" for n in (6, 10, 17, 18, 21, 22, 25)],
}


def normalize_name(name):
    """
    Canonical fixture name: 'b1', 'B_1' and 'B_{1}' all map to 'B_1'.
    """
    match = _NAME.match(name.strip())
    if not match:
        raise WrongInput(f"{name!r} is not a fixture name.")
    return f"{match.group(1).upper()}_{int(match.group(2))}"


class FixtureCatalog:
    """
    The published example designs shipped with the package, with their recorded
    sha256 checksums.
    """

    def __init__(self, package=fixture_data):
        self.package = package
        self.checksums = json.loads(
            importlib_resources.read_text(package, "checksums.json")
        )

    def __repr__(self):
        return f"FixtureCatalog with {len(self.checksums)} designs"

    def __contains__(self, name):
        try:
            return normalize_name(name) in self.checksums
        except WrongInput:
            return False

    def names(self, group=None):
        if group is None:
            return [n for g in GROUPS.values() for n in g]
        if group.upper() not in GROUPS:
            raise WrongInput(f"Unknown fixture group {group!r}, choose from {list(GROUPS)}.")
        return list(GROUPS[group.upper()])

    def text(self, name):
        name = normalize_name(name)
        if name not in self.checksums:
            raise WrongInput(f"No fixture named {name!r}.")
        return importlib_resources.read_text(self.package, f"{name}.txt")

    def load(self, name):
        name = normalize_name(name)
        return parse_design(self.text(name), label=name)

    def group(self, group):
        return [self.load(name) for name in self.names(group)]

    def verify(self, name):
        """
        :return: True when the packaged fixture file matches its recorded checksum.
        """
        name = normalize_name(name)
        with importlib_resources.path(self.package, f"{name}.txt") as path:
            digest = sha256sum(path)
        ok = digest == self.checksums[name]
        if not ok:
            logger.warning(f"Fixture {name} checksum mismatch: {digest}")
        return ok


catalog = FixtureCatalog()


def load_fixture(name):
    return catalog.load(name)
