import json
import os.path
import tempfile
from unittest import TestCase

import importlib_resources
from click.testing import CliRunner
from pytest import raises

import tests.saved_test_data
from rodeo.__main__ import build_group
from rodeo.commands.timing import parse_range
from rodeo.design import parse_design
from rodeo.storage import read_design


def json_lines(output):
    return [json.loads(line) for line in output.splitlines() if line.startswith("{")]


class CommandsTestCase(TestCase):
    def setUp(self):
        self.runner = CliRunner()
        self.main = build_group()
        self.tmpdir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmpdir.cleanup()

    def invoke(self, *args):
        return self.runner.invoke(self.main, list(args))

    def testDiscovery(self):
        self.assertEqual(
            {"evaluate", "rank", "reproduce", "search", "bridge", "gwlp", "timing"},
            set(self.main.commands),
        )

    def testEvaluateApprox(self):
        result = self.invoke("evaluate", "--fixture", "A_4", "--k", "5", "--approx")
        self.assertEqual(0, result.exit_code, result.output)
        (record,) = json_lines(result.output)
        self.assertEqual("A_4", record["label"])
        self.assertTrue(abs(record["tilde_p"] - 0.372054) < 1e-6)
        self.assertNotIn("p_alpha", record)

    def testEvaluatePositionalFixture(self):
        result = self.invoke("evaluate", "B_1", "--k", "5")
        self.assertEqual(0, result.exit_code, result.output)
        (record,) = json_lines(result.output)
        self.assertTrue(abs(record["tilde_p"] - 0.5087) < 3.5e-4)

    def testEvaluateBothFromFile(self):
        with importlib_resources.path(tests.saved_test_data, "half_fraction.txt") as path:
            result = self.invoke("evaluate", str(path), "--k", "2", "--k", "m", "--both")
        self.assertEqual(0, result.exit_code, result.output)
        records = json_lines(result.output)
        self.assertEqual([2, 3], [r["k"] for r in records])
        for r in records:
            self.assertIn("used_harmonic", r)
            self.assertIn("tilde_p", r)
        # Two-factor projections of the half fraction are full factorials
        self.assertFalse(records[0]["used_harmonic"])
        self.assertTrue(abs(records[0]["p_alpha"] - records[0]["tilde_p"]) < 1e-10)

    def testEvaluateVerbose(self):
        result = self.invoke("evaluate", "--fixture", "A_4", "--k", "2", "--exact", "-v")
        self.assertEqual(0, result.exit_code, result.output)
        (record,) = json_lines(result.output)
        self.assertEqual(10 * 5, len(record["per_model"]))

    def testEvaluatePretty(self):
        result = self.invoke("evaluate", "--fixture", "A_1", "--fixture", "A_2", "--pretty")
        self.assertEqual(0, result.exit_code, result.output)
        self.assertIn("tilde_p", result.output)
        self.assertEqual([], json_lines(result.output))

    def testEvaluateParallelKeepsOrder(self):
        names = ["B_3", "B_1", "B_2"]
        args = [a for n in names for a in ("--fixture", n)]
        result = self.invoke("evaluate", *args, "--k", "3", "--n_workers", "2")
        self.assertEqual(0, result.exit_code, result.output)
        self.assertEqual(names, [r["label"] for r in json_lines(result.output)])

    def testEvaluateHierarchical(self):
        result = self.invoke(
            "evaluate", "--fixture", "N_10", "--k", "3", "--prior", "pi1=.5,pi2=.25"
        )
        self.assertEqual(0, result.exit_code, result.output)

    def testEvaluateUsageErrors(self):
        self.assertNotEqual(0, self.invoke("evaluate", "no_such_design").exit_code)
        self.assertNotEqual(0, self.invoke("evaluate").exit_code)
        self.assertNotEqual(
            0, self.invoke("evaluate", "--fixture", "A_1", "--prior", "pi1=2").exit_code
        )
        self.assertNotEqual(
            0, self.invoke("evaluate", "--fixture", "A_1", "--k", "6").exit_code
        )

    def testLibraryErrorExitsOne(self):
        with importlib_resources.path(tests.saved_test_data, "bad_token.txt") as path:
            result = self.invoke("evaluate", str(path))
        self.assertEqual(1, result.exit_code)
        self.assertIn("not -1 or +1", result.output)

    def testGwlp(self):
        result = self.invoke("gwlp", "--fixture", "A_1", "--fixture", "A_4")
        self.assertEqual(0, result.exit_code, result.output)
        a1, a4 = json_lines(result.output)
        self.assertEqual([0, 0, 2, 1, 0], a1["gwlp"])
        self.assertEqual(3, a1["resolution"])
        self.assertEqual(5, a4["resolution"])
        self.assertEqual(0, a4["es2"])
        self.assertEqual({"label", "N", "m", "gwlp", "es2", "resolution"}, set(a1))

    def testBridge(self):
        result = self.invoke("bridge", "--fixture", "A_1")
        self.assertEqual(0, result.exit_code, result.output)
        (record,) = json_lines(result.output)
        self.assertEqual(4, len(record["coefficients"]))
        self.assertEqual({"xi10", "xi20", "xi21", "xi31", "xi32", "xi42"}, set(record["xi"]))
        self.assertTrue(abs(record["tilde_p"] - 0.594468) < 1e-6)
        expected = record["constant"] + record["value"] / 16
        self.assertTrue(abs(record["tilde_p"] - expected) < 1e-12)

    def testBridgeProjection(self):
        result = self.invoke("bridge", "--fixture", "B_1", "--k", "3")
        self.assertEqual(0, result.exit_code, result.output)
        (record,) = json_lines(result.output)
        self.assertNotIn("value", record)
        self.assertTrue(abs(record["tilde_p"] - 0.17892) < 1e-5)

    def testBridgeAsymmetricPrior(self):
        result = self.invoke(
            "bridge",
            "--fixture",
            "B_1",
            "--prior",
            '{"pi1": [0.2, 0.4, 0.6, 0.8, 0.9], "pi2": 0.3, "mode": "hierarchical"}',
        )
        self.assertNotEqual(0, result.exit_code)

    def testRank(self):
        result = self.invoke("rank", "--group", "A", "--k", "5")
        self.assertEqual(0, result.exit_code, result.output)
        records = json_lines(result.output)
        self.assertEqual(5, len(records))
        self.assertEqual(["A_1", "A_2", "A_3", "A_4"], [r["label"] for r in records[:4]])
        self.assertEqual(1, records[3]["approx_rank"])
        self.assertEqual(4, records[0]["approx_rank"])
        self.assertTrue(-1 <= records[-1]["correlation"] <= 1)

    def testRankSelf(self):
        result = self.invoke(
            "rank", "--fixture", "B_1", "--fixture", "B_12", "--k", "3", "--compare", "approx:approx"
        )
        self.assertEqual(0, result.exit_code, result.output)
        self.assertEqual(1.0, json_lines(result.output)[-1]["correlation"])

    def testRankNeedsTwo(self):
        self.assertNotEqual(0, self.invoke("rank", "--fixture", "A_1").exit_code)
        self.assertNotEqual(
            0, self.invoke("rank", "--group", "A", "--compare", "exact").exit_code
        )

    def testReproduceExample(self):
        result = self.invoke("reproduce", "--table", "ex413")
        self.assertEqual(0, result.exit_code, result.output)
        records = json_lines(result.output)
        self.assertEqual(26, len(records))
        self.assertTrue(all(r["ok"] for r in records))

    def testReproduceMismatchExitsTwo(self):
        # A zero tolerance rejects every rounded printed value
        result = self.invoke("reproduce", "--table", "ex413", "--tol", "0")
        self.assertEqual(2, result.exit_code)

    def testSearchFlags(self):
        design_path = os.path.join(self.tmpdir.name, "design.txt")
        trace_path = os.path.join(self.tmpdir.name, "trace.json")
        result = self.invoke(
            "search",
            "--runs", "8",
            "--factors", "4",
            "--k", "3",
            "--restarts", "2",
            "--seed", "1",
            "--output", design_path,
            "--trace", trace_path,
        )  # fmt: skip
        self.assertEqual(0, result.exit_code, result.output)
        d = read_design(design_path)
        self.assertEqual((8, 4), (d.runs, d.factors))
        with open(trace_path) as f:
            trace = json.load(f)
        self.assertEqual({"mode": "equal"}, trace["prior"])
        self.assertLessEqual(trace["final_objective"], trace["start_objective"])

    def testSearchConfigFile(self):
        with importlib_resources.path(tests.saved_test_data, "search_config.json") as path:
            result = self.invoke("search", "--config", str(path), "--restarts", "1")
        self.assertEqual(0, result.exit_code, result.output)
        lines = result.output.splitlines()
        design_lines = [line for line in lines if not line.startswith("{")]
        d = parse_design("\n".join(design_lines))
        (record,) = json_lines(result.output)
        self.assertLessEqual(record["final_objective"], record["start_objective"])
        self.assertTrue(record["label"].startswith("cpw-8x4"))
        self.assertEqual((8, 4), (d.runs, d.factors))

    def testSearchNeedsSize(self):
        result = self.invoke("search", "--factors", "4", "--k", "3")
        self.assertNotEqual(0, result.exit_code)

    def testTiming(self):
        result = self.invoke("timing", "--k-range", "2..3")
        self.assertEqual(0, result.exit_code, result.output)
        records = json_lines(result.output)
        self.assertEqual([2, 3], [r["k"] for r in records])
        self.assertEqual([5, 18], [r["n_models"] for r in records])

    def testParseRange(self):
        self.assertEqual([2, 3, 4, 5], parse_range("2..5"))
        self.assertEqual([4], parse_range("4"))
        with raises(Exception):
            parse_range("5..3")
        with raises(Exception):
            parse_range("two..five")
