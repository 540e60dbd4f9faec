from unittest import TestCase

from rodeo import config
from rodeo.config import Config, config_override


class ConfigTest(TestCase):
    def setUp(self):
        # A config object is initialized by a valid ini string
        self.config = Config(
            """
            [search]
            engine = auto
            restarts = 20
            subsample = 0.0
            cache_dir = none
            ks = 2, 3, 4
        """
        )

    def tearDown(self):
        pass

    def testString(self):
        self.assertEqual("auto", self.config.search.engine)

    def testInt(self):
        self.assertEqual(20, self.config.search.restarts)

    def testFloat(self):
        self.assertAlmostEqual(0.0, self.config.search.subsample)
        self.assertIsInstance(self.config.search.subsample, float)

    def testNone(self):
        self.assertIsNone(self.config.search.cache_dir)

    def testList(self):
        self.assertEqual("3", self.config.search.ks[1])

    def testMissingKey(self):
        with self.assertRaises(AttributeError):
            self.config.search.not_a_key

    def testConfigOverride(self):
        self.assertEqual(20, self.config.search.restarts)

        with config_override({"search.restarts": 3}, self.config):
            self.assertEqual(3, self.config.search.restarts)

        self.assertEqual(20, self.config.search.restarts)

    def testOverrideNone(self):
        # A 'none' default accepts any override and reverts to None
        with config_override({"search.cache_dir": "/tmp/cells"}, self.config):
            self.assertEqual("/tmp/cells", self.config.search.cache_dir)
        self.assertIsNone(self.config.search.cache_dir)

    def testPackagedDefaults(self):
        self.assertEqual(3, config.reproduce.slack_ulps)
        self.assertEqual(4, config.reproduce.rank_decimals)
        self.assertEqual("auto", config.criteria.harmonic)
        self.assertEqual(2048, config.approx.batch_size)

    def testPackagedOverride(self):
        with config_override({"reproduce.slack_ulps": 0}):
            self.assertEqual(0, config.reproduce.slack_ulps)
        self.assertEqual(3, config.reproduce.slack_ulps)
