__author__ = 'pyfbmclt developers'
import json
import os
import shutil
import tempfile
import unittest

os.environ['DEBUG'] = "0"
os.environ['DEBUG_VERBOSE'] = "0"

import numpy as np

from pyfbmclt.constants import DEFAULTS
from pyfbmclt.exceptions import PyFbmCltDomainException, \
    PyFbmCltException, PyFbmCltIOException, PyFbmCltPreconditionException, \
    PyFbmCltRegimeException, PyFbmCltUsageException
from pyfbmclt.quadrature import adaptive, gauss_jacobi, power_law_integral
from pyfbmclt.serialization import encode_report, read_config_file, \
    validate_report, write_atomic, write_samples_csv
from pyfbmclt.types import HurstModel, QuadResult, RunConfig, SampleSet
from pyfbmclt.utils import derive_seed, is_power_of_two, parse_intervals, \
    parse_multi_index, require_power_of_two


class HurstModelTestCase(unittest.TestCase):
    """ Hurst Model Test Case """

    def test_domain(self):
        for H, d in ((0.0, 1), (1.0, 1), (0.5, 2), (0.4, 0), ('x', 1)):
            with self.assertRaises(PyFbmCltDomainException):
                HurstModel(H, d)

    def test_regimes(self):
        self.assertTrue(HurstModel(0.6, 1).theorem_regime())
        self.assertFalse(HurstModel(0.45, 1).theorem_regime())
        self.assertTrue(HurstModel(0.45, 1).constant_regime())
        self.assertFalse(HurstModel(0.3, 1).constant_regime())
        with self.assertRaises(PyFbmCltRegimeException):
            HurstModel(0.3, 2).require_theorem_regime()

    def test_conjecture_mode(self):
        model = HurstModel(0.45, 1, conjecture=True)
        model.require_theorem_regime()
        self.assertTrue(model.exploratory())
        self.assertFalse(HurstModel(0.6, 1, conjecture=True).exploratory())
        with self.assertRaises(PyFbmCltRegimeException) as context:
            HurstModel(0.3, 1, conjecture=True).require_theorem_regime()
        self.assertIn("1/(d+2) < H < 1/d", str(context.exception))

    def test_beta(self):
        self.assertAlmostEqual(HurstModel(0.4, 2).beta, 0.5)
        self.assertEqual(HurstModel(0.6), HurstModel(0.6, 1))


class ValueObjectTestCase(unittest.TestCase):
    """ Value Object Test Case """

    def test_quad_result_arithmetic(self):
        a = QuadResult(2.0, 0.1)
        b = QuadResult(4.0, 0.2)
        self.assertEqual((a + b).value, 6.0)
        self.assertAlmostEqual((a + b).error, 0.3)
        self.assertAlmostEqual((a * b).error, 2.0 * 0.2 + 4.0 * 0.1)
        self.assertEqual((a / b).value, 0.5)
        self.assertEqual(a.scaled(-3.0).value, -6.0)
        self.assertAlmostEqual(a.scaled(-3.0).error, 0.3)

    def test_sample_set(self):
        sample = SampleSet([1.0, -1.0, 2.0, -2.0], 'functional', {'n': 4})
        self.assertEqual(len(sample), 4)
        self.assertEqual(sample.mean(), 0.0)
        self.assertEqual(sample.moment(2), 2.5)
        self.assertAlmostEqual(sample.kurtosis(), 8.5 / 6.25)
        with self.assertRaises(ValueError):
            sample.values[0] = 3.0
        with self.assertRaises(PyFbmCltDomainException):
            SampleSet([1.0], 'unknown')
        with self.assertRaises(PyFbmCltDomainException):
            SampleSet([], 'functional').mean()

    def test_run_config_defaults(self):
        config = RunConfig('constants', H=0.7)
        self.assertEqual(config.H, 0.7)
        self.assertEqual(config.d, DEFAULTS['d'])
        resolved = config.as_dict()
        self.assertEqual(resolved['subcommand'], 'constants')
        self.assertEqual(set(resolved) - {'subcommand'}, set(DEFAULTS))


class UtilsTestCase(unittest.TestCase):
    """ Utils Test Case """

    def test_derive_seed(self):
        self.assertEqual(derive_seed(1, 2), derive_seed(1, 2))
        self.assertNotEqual(derive_seed(1, 2), derive_seed(1, 3))
        self.assertNotEqual(derive_seed(1, 2), derive_seed(2, 2))

    def test_power_of_two(self):
        self.assertTrue(is_power_of_two(1024))
        self.assertFalse(is_power_of_two(1000))
        self.assertFalse(is_power_of_two(0))
        with self.assertRaises(PyFbmCltPreconditionException):
            require_power_of_two(48)

    def test_parsers(self):
        self.assertEqual(parse_intervals("0,1;2,3.5"),
                         [(0.0, 1.0), (2.0, 3.5)])
        self.assertEqual(parse_multi_index("4,2"), [4, 2])
        with self.assertRaises(PyFbmCltUsageException):
            parse_intervals("0,1,2")
        with self.assertRaises(PyFbmCltUsageException):
            parse_multi_index("two")

    def test_exception_message(self):
        e = PyFbmCltException("failed", [('kind', 'detail')])
        self.assertEqual(str(e), "failed - detail")
        self.assertEqual(str(PyFbmCltException("plain")), "plain")


class QuadratureTestCase(unittest.TestCase):
    """ Quadrature Test Case """

    def test_power_law_integral(self):
        # int_0^inf u^-1/2 / (1 + u) du = pi
        result = power_law_integral(lambda u: u ** -0.5 / (1.0 + u),
                                    alpha=-0.5, gamma=1.5)
        self.assertAlmostEqual(result.value, np.pi, delta=1e-10)
        with self.assertRaises(PyFbmCltDomainException):
            power_law_integral(lambda u: 1.0, alpha=-1.0, gamma=2.0)

    def test_gauss_jacobi_weight(self):
        # int_0^2 x^-1/2 dx = 2 sqrt(2)
        x, w = gauss_jacobi(0.0, 2.0, 5, -0.5)
        self.assertAlmostEqual(np.sum(w), 2.0 * np.sqrt(2.0), places=12)
        self.assertAlmostEqual(np.dot(w, x), 2.0 ** 1.5 * 2.0 / 3.0,
                               places=12)

    def test_adaptive(self):
        result = adaptive(np.cos, 0.0, np.pi / 2.0)
        self.assertAlmostEqual(result.value, 1.0, places=12)
        self.assertTrue(result.converged)


class SerializationTestCase(unittest.TestCase):
    """ Serialization Test Case """

    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_encoder_handles_numpy(self):
        text = encode_report({'b': np.float64(1.5), 'a': np.arange(2),
                              'q': QuadResult(1.0, 0.5),
                              'flag': np.bool_(True)})
        decoded = json.loads(text)
        self.assertEqual(list(decoded), ['a', 'b', 'flag', 'q'])
        self.assertEqual(decoded['a'], [0, 1])
        self.assertEqual(decoded['q']['error'], 0.5)
        self.assertIs(decoded['flag'], True)

    def test_invalid_report(self):
        with self.assertRaises(PyFbmCltException):
            validate_report({'schema': 'something else'})

    def test_write_atomic(self):
        target = os.path.join(self.directory, 'sub', 'out.txt')
        write_atomic("first\n", target)
        write_atomic("second\n", target)
        with open(target) as handle:
            self.assertEqual(handle.read(), "second\n")
        self.assertEqual(os.listdir(os.path.dirname(target)), ['out.txt'])

    def test_write_atomic_failure_names_path(self):
        blocker = os.path.join(self.directory, 'file')
        with open(blocker, 'w') as handle:
            handle.write('x')
        target = os.path.join(blocker, 'out.txt')
        with self.assertRaises(PyFbmCltIOException) as context:
            write_atomic("text", target)
        self.assertEqual(context.exception.path, target)

    def test_samples_csv(self):
        target = os.path.join(self.directory, 'samples.csv')
        write_samples_csv([SampleSet([1.0, 2.0], 'functional'),
                           SampleSet([3.0], 'limit_law')], target)
        with open(target) as handle:
            self.assertEqual(handle.read().splitlines(),
                             ['functional,limit_law', '1.0,3.0', '2.0,'])

    def test_config_file(self):
        target = os.path.join(self.directory, 'run.cfg')
        with open(target, 'w') as handle:
            handle.write("H = 0.7\nseed = 3 # fixed\n")
        self.assertEqual(read_config_file(target), {'H': '0.7', 'seed': '3'})


if __name__ == '__main__':
    unittest.main()
