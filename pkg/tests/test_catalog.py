import json
import subprocess
import sys
from unittest import TestCase

import importlib_resources
from parameterized import parameterized
from pytest import raises

import rodeo.catalog.data
from rodeo.catalog import GROUPS, FixtureCatalog, catalog, load_fixture, normalize_name
from rodeo.exceptions import WrongInput

SIZES = {
    "A": (16, 5),
    "B": (14, 5),
    "N_6": (6, 5),
    "N_10": (10, 9),
    "N_17": (17, 16),
    "N_18": (18, 17),
    "N_21": (21, 20),
    "N_22": (22, 21),
    "N_25": (25, 24),
}


class CatalogTestCase(TestCase):
    @parameterized.expand([(name,) for name in catalog.names()])
    def testChecksum(self, name):
        self.assertTrue(catalog.verify(name))

    @parameterized.expand([(name,) for name in catalog.names()])
    def testSize(self, name):
        d = load_fixture(name)
        expected = SIZES.get(name) or SIZES[name[0]]
        self.assertEqual(expected, (d.runs, d.factors))
        self.assertEqual(name, d.label)

    def testEveryFileRecorded(self):
        checksums = json.loads(
            importlib_resources.read_text(rodeo.catalog.data, "checksums.json")
        )
        self.assertEqual(sorted(catalog.names()), sorted(checksums))

    def testGroups(self):
        self.assertEqual(4, len(catalog.group("A")))
        self.assertEqual(12, len(catalog.names("b")))
        self.assertEqual(GROUPS["N"], catalog.names("N"))
        with raises(WrongInput):
            catalog.names("L")

    @parameterized.expand(
        [("B_1", "B_1"), ("b1", "B_1"), ("B_{12}", "B_12"), (" n_25 ", "N_25")]
    )
    def testNormalize(self, name, expected):
        self.assertEqual(expected, normalize_name(name))

    def testUnknown(self):
        self.assertNotIn("B_13", catalog)
        self.assertNotIn("half_fraction.txt", catalog)
        with raises(WrongInput):
            catalog.load("B_13")
        with raises(WrongInput):
            normalize_name("design")

    def testLevelBalanced(self):
        for name in catalog.names("B"):
            self.assertTrue(catalog.load(name).is_level_balanced())

    def testRepr(self):
        self.assertEqual("FixtureCatalog with 23 designs", repr(FixtureCatalog()))

    def testFreshImport(self):
        # The catalog must load in a new interpreter before anything else from rodeo
        for module in ("rodeo.catalog", "rodeo.commands.rank", "rodeo.reproduce"):
            subprocess.check_call(
                [sys.executable, "-c", f"import {module}; {module}.__name__"]
            )
