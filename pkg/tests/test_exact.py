from unittest import TestCase

import numpy as np
from parameterized import parameterized
from pytest import raises

from rodeo.catalog import catalog
from rodeo.criteria import (
    average_tilde_criteria,
    exact_criteria,
    projection_average_exact,
    trace_h,
    trace_ig,
)
from rodeo.design import Design, full_factorial
from rodeo.exceptions import AllInestimable, DimensionsIncompatible, WrongInput
from rodeo.models import MaximalModel, PriorSpec, enumerate_submodels, weight_table


def enumerated(k, n_runs, prior=None):
    return weight_table(
        MaximalModel.second_order(k),
        prior or PriorSpec.equal(),
        n_runs,
        engine="enumerated",
    )


def aliased_design():
    # Third column repeats the first
    d = full_factorial(2)
    return Design(np.column_stack([d.entries, d.column(0)]), label="aliased")


class TraceTestCase(TestCase):
    def setUp(self):
        self.d = full_factorial(3)
        self.models = enumerate_submodels(MaximalModel.second_order(3), 8)

    def testFullModel(self):
        full = self.models[-1]
        self.assertEqual(6, full.v_s)
        self.assertAlmostEqual(6 / 8, trace_h(self.d, full), places=12)
        self.assertAlmostEqual((1 + 1 + 1 / 3) / 8, trace_ig(self.d, full), places=12)

    def testInterceptOnly(self):
        empty = self.models[0]
        self.assertEqual(0.0, trace_h(self.d, empty))
        self.assertAlmostEqual(1 / 8, trace_ig(self.d, empty), places=12)

    def testInestimable(self):
        models = enumerate_submodels(MaximalModel.second_order(3), 4)
        x1x3 = [s for s in models if s.mains == (0, 2) and not s.interactions][0]
        self.assertIsNone(trace_h(aliased_design(), x1x3))
        self.assertIsNone(trace_ig(aliased_design(), x1x3))


class ExactCriteriaTestCase(TestCase):
    @parameterized.expand([(0.0,), (0.5,), (1.0,)])
    def testOrthogonalMatchesApprox(self, alpha):
        # A resolution V fraction estimates every submodel orthogonally
        d = catalog.load("A_4")
        weights = enumerated(5, 16)
        report = exact_criteria(d, weights.maximal, weights, alpha)
        tilde = average_tilde_criteria(d, 5, weights, alpha)
        self.assertFalse(report.used_harmonic)
        self.assertTrue(abs(report.p_alpha - tilde.tilde_p) < 1e-10)
        self.assertTrue(abs(report.a_s - tilde.tilde_a) < 1e-10)
        self.assertTrue(abs(report.i_s - tilde.tilde_i) < 1e-10)

    @parameterized.expand([(0.0,), (0.5,), (1.0,)])
    def testStrengthThreeProjections(self, alpha):
        d = catalog.load("A_3")
        weights = enumerated(3, 16)
        exact = projection_average_exact(d, 3, weights, alpha)
        tilde = average_tilde_criteria(d, 3, weights, alpha).tilde_p
        self.assertTrue(abs(exact - tilde) < 1e-10)

    def testFullFactorialHierarchical(self):
        d = full_factorial(4)
        weights = enumerated(4, 16, PriorSpec.hierarchical(0.5, 0.25))
        report = exact_criteria(d, weights.maximal, weights, 0.5)
        tilde = average_tilde_criteria(d, 4, weights, 0.5).tilde_p
        self.assertTrue(abs(report.p_alpha - tilde) < 1e-10)

    def testNonregularTwoFactor(self):
        for name in ("B_1", "B_12"):
            value = projection_average_exact(catalog.load(name), 2, enumerated(2, 14), 0.5)
            self.assertTrue(abs(value - 0.1019) < 5e-5)

    @parameterized.expand([("B_1", 0.17998), ("B_12", 0.19506)])
    def testNonregularThreeFactor(self, name, expected):
        value = projection_average_exact(catalog.load(name), 3, enumerated(3, 14), 0.5)
        self.assertTrue(abs(value - expected) < 1e-5)

    def testPerModel(self):
        d = full_factorial(3)
        weights = enumerated(3, 8)
        report = exact_criteria(d, weights.maximal, weights, 0.5, per_model=True)
        self.assertEqual(18, report.n_evaluated)
        self.assertEqual(18, len(report.per_model))
        self.assertTrue(all(t.estimable for t in report.per_model))
        self.assertAlmostEqual(1.0, sum(t.weight for t in report.per_model), places=12)
        self.assertNotIn("per_model", report.to_dict())

    def testProjectionPerModel(self):
        weights = enumerated(2, 16)
        _, reports = projection_average_exact(
            catalog.load("A_4"), 2, weights, 0.5, per_model=True, full_output=True
        )
        self.assertEqual(10, len(reports))
        self.assertTrue(all(len(r.per_model) == 5 for r in reports))
        _, reports = projection_average_exact(
            catalog.load("A_4"), 2, weights, 0.5, full_output=True
        )
        self.assertIsNone(reports[0].per_model)


def seven_run_design():
    # Full factorial minus one run: every second-order submodel stays estimable
    return Design(full_factorial(3).entries[1:], label="seven")


class RelabelingTestCase(TestCase):
    def setUp(self):
        self.d = seven_run_design()
        self.weights = enumerated(3, 7, PriorSpec.hierarchical(0.6, 0.3))

    @parameterized.expand(
        [
            ("rows", [6, 5, 4, 3, 2, 1, 0], [1, 1, 1]),
            ("columns", list(range(7)), [-1, 1, 1]),
            ("both", [3, 0, 6, 1, 5, 2, 4], [1, -1, -1]),
        ]
    )
    def testExactCriteria(self, _, rows, signs):
        other = Design(self.d.entries[rows] * np.array(signs), label="other")
        for alpha in (0.0, 0.5, 1.0):
            first = exact_criteria(self.d, self.weights.maximal, self.weights, alpha)
            second = exact_criteria(other, self.weights.maximal, self.weights, alpha)
            self.assertTrue(abs(first.p_alpha - second.p_alpha) < 1e-10)
            self.assertTrue(abs(first.a_s - second.a_s) < 1e-10)

    def testProjectionAverage(self):
        d = catalog.load("B_1")
        rows = np.random.default_rng(3).permutation(d.runs)
        signs = np.where(np.arange(d.factors) < 4, -1, 1)
        other = Design(d.entries[rows] * signs, label="other")
        weights = enumerated(3, 14)
        first = projection_average_exact(d, 3, weights, 0.5)
        second = projection_average_exact(other, 3, weights, 0.5)
        self.assertTrue(abs(first - second) < 1e-10)


class AlphaBlendTestCase(TestCase):
    @parameterized.expand([(0.0,), (0.25,), (0.5,), (0.8,), (1.0,)])
    def testAffineInAlpha(self, alpha):
        d = seven_run_design()
        weights = enumerated(3, 7)
        report = exact_criteria(d, weights.maximal, weights, alpha, harmonic="never")
        self.assertFalse(report.used_harmonic)
        expected = alpha * report.i_s + (1 - alpha) * report.a_s
        self.assertTrue(abs(report.p_alpha - expected) < 1e-12)
        low = exact_criteria(d, weights.maximal, weights, 0.0, harmonic="never").p_alpha
        high = exact_criteria(d, weights.maximal, weights, 1.0, harmonic="never").p_alpha
        self.assertTrue(abs(report.p_alpha - (low + alpha * (high - low))) < 1e-12)


class HarmonicTestCase(TestCase):
    def setUp(self):
        self.d = aliased_design()
        self.weights = enumerated(3, 4)

    def testAutoSwitches(self):
        report = exact_criteria(self.d, self.weights.maximal, self.weights, 0.5)
        self.assertTrue(report.used_harmonic)
        self.assertGreater(report.n_inestimable, 0)
        self.assertTrue(np.isfinite(report.p_alpha))

    def testNeverRaises(self):
        with raises(AllInestimable):
            exact_criteria(
                self.d, self.weights.maximal, self.weights, 0.5, harmonic="never"
            )

    def testAlwaysOnOrthogonal(self):
        d = full_factorial(3)
        weights = enumerated(3, 8)
        report = exact_criteria(d, weights.maximal, weights, 0.5, harmonic="always")
        self.assertTrue(report.used_harmonic)
        # Non-intercept models all have tr[H_s] = v_s / 8, the intercept-only model adds 0
        inv_a = sum(p * 8 / s.v_s for s, p in zip(weights.models, weights.p_s) if s.v_s)
        self.assertAlmostEqual(1 / inv_a, report.a_s, places=12)

    def testBadMode(self):
        with raises(WrongInput):
            exact_criteria(
                self.d, self.weights.maximal, self.weights, 0.5, harmonic="sometimes"
            )


class ExactErrorsTestCase(TestCase):
    def setUp(self):
        self.d = full_factorial(3)
        self.weights = enumerated(3, 8)

    def testAlpha(self):
        with raises(WrongInput):
            exact_criteria(self.d, self.weights.maximal, self.weights, 1.5)

    def testNeedsEnumerated(self):
        weights = weight_table(MaximalModel.second_order(3), PriorSpec.equal(), 8)
        with raises(WrongInput):
            exact_criteria(self.d, weights.maximal, weights, 0.5)

    def testRunMismatch(self):
        with raises(DimensionsIncompatible):
            exact_criteria(full_factorial(4), self.weights.maximal, self.weights, 0.5)

    def testProjectionSize(self):
        with raises(WrongInput):
            projection_average_exact(self.d, 4, self.weights, 0.5)
        with raises(DimensionsIncompatible):
            projection_average_exact(full_factorial(4), 2, self.weights, 0.5)
