import os.path
import tempfile
from unittest import TestCase
from unittest.mock import patch

import numpy as np
from pytest import raises

from rodeo import __version__
from rodeo.utils import Random, ensure, get_full_version, sha256sum, spawn_seeds


class UtilsTestCase(TestCase):
    def testGetFullVersion(self):
        """Test typical version string response is coherent with package."""

        self.assertTrue(get_full_version().startswith(__version__))

    @patch("os.path.isdir")
    def testGetFullVersionPath(self, d_mock):
        """Test not isdir case of get_full_version."""

        d_mock.return_value = False

        self.assertTrue(get_full_version() == __version__)

    @patch("subprocess.check_output")
    def testGetFullVersionSrc(self, p_mock):
        """Test subprocess exception case of get_full_version."""

        p_mock.side_effect = FileNotFoundError

        self.assertTrue(get_full_version() == __version__ + ".src")

    @patch("subprocess.check_output")
    def testGetFullVersionUnexpected(self, p_mock):
        """Test unexpected exception case of get_full_version."""

        p_mock.side_effect = RuntimeError

        self.assertTrue(get_full_version() == __version__ + ".x")

    def testEnsure(self):
        ensure(True)
        with raises(AssertionError, match="broken"):
            ensure(False, "broken")

    def testSha256sum(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "empty.txt")
            open(path, "w").close()
            self.assertEqual(
                "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855",
                sha256sum(path),
            )


class UtilsRandomTestCase(TestCase):
    def testSpawnSeedsDeterministic(self):
        self.assertEqual(spawn_seeds(0, 4), spawn_seeds(0, 4))
        self.assertNotEqual(spawn_seeds(0, 4), spawn_seeds(1, 4))

    def testSpawnSeedsPrefix(self):
        # Seeds of the first restarts do not depend on how many are requested
        self.assertEqual(spawn_seeds(3, 2), spawn_seeds(3, 5)[:2])
        self.assertEqual(5, len(set(spawn_seeds(3, 5))))

    def testRandomContext(self):
        with Random(42):
            first = np.random.permutation(10)
        with Random(42):
            second = np.random.permutation(10)
        self.assertTrue(np.array_equal(first, second))

    def testRandomRestoresState(self):
        np.random.seed(1)
        expected = np.random.random()
        np.random.seed(1)
        with Random(99):
            np.random.random()
        self.assertEqual(expected, np.random.random())
