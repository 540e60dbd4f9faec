from unittest import TestCase

import numpy as np
from parameterized import parameterized
from pytest import raises
from scipy.special import comb

from rodeo.catalog import catalog
from rodeo.design import (
    Design,
    Ordering,
    e_s2,
    full_factorial,
    gma_compare,
    gwlp,
    is_orthogonal_array,
    j_characteristic,
    resolution,
    word_sums,
)
from rodeo.exceptions import WrongInput


class GwlpTestCase(TestCase):
    @parameterized.expand(
        [
            ("A_1", (0, 0, 2, 1, 0)),
            ("A_2", (0, 0, 1, 0, 0)),
            ("A_3", (0, 0, 0, 1, 0)),
            ("A_4", (0, 0, 0, 0, 1)),
        ]
    )
    def testRegularFractions(self, name, expected):
        g = gwlp(catalog.load(name))
        self.assertEqual(5, len(g))
        self.assertTrue(np.allclose(expected, g.b))

    @parameterized.expand(
        [
            ("N_6", (0.00, 1.11, 2.22, 0.56)),
            ("N_10", (0.00, 1.44, 9.92, 14.96)),
            ("N_17", (0.06, 0.97, 39.36, 124.22)),
            ("N_25", (0.04, 1.06, 91.02, 472.96)),
        ]
    )
    def testSmallRunPrefixes(self, name, expected):
        g = gwlp(catalog.load(name), max_order=4)
        self.assertTrue(np.allclose(expected, np.round(g.b, 2)))

    def testOneBasedAccess(self):
        g = gwlp(catalog.load("A_1"))
        self.assertEqual(2, g[3])
        with raises(IndexError):
            g[0]
        with raises(IndexError):
            g[6]

    def testPrefixPads(self):
        g = gwlp(full_factorial(2))
        self.assertEqual((0.0, 0.0, 0.0, 0.0), g.prefix(4))

    def testDefaultOrderCap(self):
        # More factors than full_gwlp_max_factors: only b_1..b_4
        self.assertEqual(4, len(gwlp(catalog.load("N_25"))))

    def testJCharacteristic(self):
        d = catalog.load("A_4")
        self.assertEqual(16, j_characteristic(d, range(5)))
        self.assertEqual(0, j_characteristic(d, [0, 1]))
        with raises(WrongInput):
            j_characteristic(d, [])
        with raises(WrongInput):
            j_characteristic(d, [0, 0])

    def testWordSums(self):
        subsets, sums = word_sums(full_factorial(3), 2)
        self.assertEqual([[0, 1], [0, 2], [1, 2]], subsets.tolist())
        self.assertTrue(np.array_equal([0, 0, 0], sums))


def relabeled(d, seed=0):
    # Rows shuffled and every other column negated
    rng = np.random.default_rng(seed)
    signs = np.where(np.arange(d.factors) % 2 == 0, -1, 1)
    return Design(d.entries[rng.permutation(d.runs)] * signs, label=d.label)


class IsomorphismTestCase(TestCase):
    @parameterized.expand([("A_2",), ("B_1",), ("N_6",)])
    def testJCharacteristics(self, name):
        d = catalog.load(name)
        other = relabeled(d)
        for length in (1, 2, 3):
            _, sums = word_sums(d, length)
            _, other_sums = word_sums(other, length)
            self.assertTrue(np.array_equal(np.abs(sums), np.abs(other_sums)))
        self.assertEqual(j_characteristic(d, [0, 1, 2]), j_characteristic(other, [0, 1, 2]))

    @parameterized.expand([("A_2",), ("B_1",), ("N_6",)])
    def testGwlp(self, name):
        d = catalog.load(name)
        self.assertTrue(np.allclose(gwlp(d).b, gwlp(relabeled(d, seed=1)).b))


class OrderingTestCase(TestCase):
    def testGmaOrder(self):
        patterns = {name: gwlp(catalog.load(name)) for name in catalog.names("A")}
        self.assertEqual(Ordering.BETTER, gma_compare(patterns["A_4"], patterns["A_3"]))
        self.assertEqual(Ordering.BETTER, gma_compare(patterns["A_3"], patterns["A_2"]))
        self.assertEqual(Ordering.WORSE, gma_compare(patterns["A_1"], patterns["A_2"]))
        self.assertEqual(Ordering.TIED, gma_compare(patterns["A_1"], patterns["A_1"]))

    def testLengthMismatch(self):
        with raises(WrongInput):
            gma_compare(gwlp(full_factorial(2)), gwlp(full_factorial(3)))

    @parameterized.expand([("A_1", 3), ("A_2", 3), ("A_3", 4), ("A_4", 5)])
    def testResolution(self, name, expected):
        self.assertEqual(expected, resolution(gwlp(catalog.load(name))))

    def testResolutionInfinite(self):
        self.assertEqual(float("inf"), resolution(gwlp(full_factorial(3))))

    def testOrthogonalArray(self):
        self.assertTrue(is_orthogonal_array(full_factorial(4), 4))
        self.assertTrue(is_orthogonal_array(catalog.load("A_3"), 3))
        self.assertFalse(is_orthogonal_array(catalog.load("A_2"), 3))
        with raises(WrongInput):
            is_orthogonal_array(full_factorial(2), 0)


class Es2TestCase(TestCase):
    @parameterized.expand([(name,) for name in catalog.names()])
    def testEs2MatchesB2(self, name):
        d = catalog.load(name)
        b2 = gwlp(d, max_order=2)[2]
        expected = d.runs ** 2 * b2 / comb(d.factors, 2, exact=True)
        self.assertTrue(abs(e_s2(d) - expected) < 1e-10)

    def testOrthogonal(self):
        self.assertEqual(0, e_s2(full_factorial(3)))

    def testSingleFactor(self):
        with raises(WrongInput):
            e_s2(Design([[1], [-1]]))
