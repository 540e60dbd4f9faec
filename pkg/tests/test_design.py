from unittest import TestCase

import importlib_resources
import numpy as np
from parameterized import parameterized
from pytest import raises

import tests.saved_test_data
from rodeo.design import Design, full_factorial, model_matrix, parse_design, project
from rodeo.exceptions import DesignFormatError, DimensionsIncompatible, WrongInput
from rodeo.models import MaximalModel
from rodeo.storage import read_design


class DesignTestCase(TestCase):
    def setUp(self):
        self.d = Design(
            [[-1, -1, 1], [1, -1, -1], [-1, 1, -1], [1, 1, 1]], label="half"
        )

    def tearDown(self):
        pass

    def testShape(self):
        self.assertEqual(4, self.d.runs)
        self.assertEqual(3, self.d.factors)
        self.assertEqual(self.d.N, self.d.runs)
        self.assertEqual(self.d.m, self.d.factors)

    def testImmutable(self):
        with raises(ValueError):
            self.d.entries[0, 0] = 1

    def testWithColumn(self):
        d2 = self.d.with_column(0, [1, 1, -1, -1])
        self.assertTrue(np.array_equal([1, 1, -1, -1], d2.column(0)))
        self.assertTrue(np.array_equal([-1, 1, -1, 1], self.d.column(0)))
        self.assertNotEqual(self.d, d2)

    def testEqualityAndHash(self):
        other = Design(self.d.entries.copy(), label="other")
        self.assertEqual(self.d, other)
        self.assertEqual(hash(self.d), hash(other))

    def testBadEntry(self):
        with raises(DesignFormatError) as e:
            Design([[1, 0], [1, -1]])
        self.assertEqual((1, 2), (e.value.row, e.value.column))

    def testTooSmall(self):
        with raises(DimensionsIncompatible):
            Design([[1, -1, 1]])

    def testLevelBalance(self):
        self.assertTrue(self.d.is_level_balanced())
        self.assertFalse(Design([[1, 1], [1, -1], [-1, 1], [1, 1]]).is_level_balanced())
        # Odd N is balanced when every column sum is +-1
        self.assertTrue(Design([[1], [-1], [1]]).is_level_balanced())


class ParseDesignTestCase(TestCase):
    def testParseFile(self):
        with importlib_resources.path(tests.saved_test_data, "half_fraction.txt") as path:
            d = read_design(str(path))
        self.assertEqual("half_fraction", d.label)
        self.assertEqual((4, 3), d.entries.shape)
        self.assertTrue(np.array_equal([1, 1, 1], d.entries[3]))

    @parameterized.expand(
        [
            ("commas", "-1,1\n1,-1\n"),
            ("spaces", "-1 1\n1 -1\n"),
            ("plus", "-1, +1\n+1, -1\n"),
            ("unicode_minus", "−1 1\n1 −1\n"),
            ("comments", "# a design\n\n-1 1\n# mid\n1 -1\n"),
        ]
    )
    def testAcceptedSpellings(self, _, text):
        d = parse_design(text)
        self.assertTrue(np.array_equal([[-1, 1], [1, -1]], d.entries))

    def testBadToken(self):
        text = importlib_resources.read_text(tests.saved_test_data, "bad_token.txt")
        with raises(DesignFormatError) as e:
            parse_design(text, label="bad")
        self.assertEqual(3, e.value.row)
        self.assertEqual(2, e.value.column)

    def testErrorLineCountsComments(self):
        with raises(DesignFormatError) as e:
            parse_design("# header\n\n1 -1\n1 x\n")
        self.assertEqual((4, 2), (e.value.row, e.value.column))
        self.assertIn("line 4", str(e.value))

    def testRagged(self):
        text = importlib_resources.read_text(tests.saved_test_data, "ragged.txt")
        with raises(DimensionsIncompatible):
            parse_design(text)

    def testEmpty(self):
        with raises(DesignFormatError):
            parse_design("# nothing here\n")


class ProjectTestCase(TestCase):
    def setUp(self):
        self.d = full_factorial(3)

    def testProjectOrder(self):
        p = project(self.d, [2, 0])
        self.assertTrue(np.array_equal(self.d.column(2), p.column(0)))
        self.assertTrue(np.array_equal(self.d.column(0), p.column(1)))

    @parameterized.expand([([0, 0],), ([3],), ([],), ([-1],)])
    def testProjectInvalid(self, cols):
        with raises(WrongInput):
            project(self.d, cols)

    def testFullFactorial(self):
        d = full_factorial(3)
        self.assertEqual((8, 3), d.entries.shape)
        self.assertEqual(8, len({tuple(row) for row in d.entries}))
        # Standard order: first factor alternates fastest
        self.assertTrue(np.array_equal([-1, 1, -1, 1, -1, 1, -1, 1], d.column(0)))
        with raises(WrongInput):
            full_factorial(0)


class ModelMatrixTestCase(TestCase):
    def testSecondOrder(self):
        d = full_factorial(3)
        maximal = MaximalModel.second_order(3)
        x = model_matrix(d, maximal)
        self.assertEqual((8, 7), x.shape)
        self.assertTrue(np.array_equal(np.ones(8), x[:, 0]))
        self.assertTrue(np.array_equal(d.column(0) * d.column(2), x[:, 5]))
        # Every effect of the full factorial is orthogonal to every other
        self.assertTrue(np.array_equal(8 * np.eye(7), x.T @ x))

    def testFactorOutOfRange(self):
        with raises(WrongInput):
            model_matrix(full_factorial(2), MaximalModel.second_order(3))
