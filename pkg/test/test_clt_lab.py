__author__ = 'pyfbmclt developers'
import functools
import math
import os
import unittest

os.environ['DEBUG'] = "0"
os.environ['DEBUG_VERBOSE'] = "0"

import numpy as np
from scipy.stats import binomtest

from pyfbmclt import HurstModel
from pyfbmclt.clt_lab import clt_acceptance, default_epsilon, \
    even_moment_check, first_order_sample, first_order_set, \
    functional_direct_sample, functional_direct_set, functional_path, \
    functional_sample, functional_set, increment_moment_scaling, \
    ks_two_sample, limit_law_sample, limit_law_set, local_time_estimate, \
    local_time_study, n_doubling_diagnostic, odd_moment_check, \
    richardson_local_time
from pyfbmclt.ensemble import run_ensemble
from pyfbmclt.exceptions import PyFbmCltDomainException, \
    PyFbmCltPreconditionException, PyFbmCltRegimeException
from pyfbmclt.fbm import generate_path
from pyfbmclt.functions import gaussian_density, gaussian_diff, \
    norm_fourier, odd_gaussian, zero
from pyfbmclt.gaussian_analysis import first_order_mean, \
    functional_variance, local_time_moments
from pyfbmclt.limit_constant import c_closed

from test import full_tier, getTestConfig


class FunctionalTestCase(unittest.TestCase):
    """ Functional Test Case """

    def setUp(self):
        self.model = HurstModel(0.6)
        self.f = gaussian_diff(1.0, 2.0)

    def test_path_starts_at_zero(self):
        path = generate_path(self.model, 1.0, 64, 3)
        walk = functional_path(self.f, path, 2)
        self.assertEqual(walk.shape, (65,))
        self.assertEqual(walk[0], 0.0)

    def test_sample_is_last_point(self):
        path = generate_path(self.model, 1.0, 64, 3)
        self.assertEqual(functional_sample(self.f, self.model, 2, 1.0, 64, 3),
                         float(functional_path(self.f, path, 2)[-1]))

    def test_zero_function(self):
        self.assertEqual(functional_sample(zero(), self.model, 2, 1.0, 64, 3),
                         0.0)

    def test_regime_checked(self):
        with self.assertRaises(PyFbmCltRegimeException) as context:
            functional_sample(self.f, HurstModel(0.45), 2, 1.0, 64, 3)
        self.assertIn("1/(d+1) < H < 1/d", str(context.exception))

    def test_resolution_checked(self):
        with self.assertRaises(PyFbmCltPreconditionException) as context:
            functional_sample(self.f, self.model, 8, 1.0, 64, 3)
        self.assertIn("128", str(context.exception))

    def test_dimension_checked(self):
        with self.assertRaises(PyFbmCltDomainException):
            functional_sample(gaussian_diff(1.0, 2.0, 2), self.model, 2, 1.0,
                              64, 3)

    def test_first_order_needs_mass(self):
        with self.assertRaises(PyFbmCltDomainException):
            first_order_sample(self.f, self.model, 2, 1.0, 64, 3)
        value = first_order_sample(gaussian_density(), self.model, 2, 1.0,
                                   64, 3)
        self.assertGreater(value, 0.0)

    def test_time_change_representation(self):
        # int_0^t f(n^H B) and n^{-1} int_0^{nt} f(B) share one path law
        for n, seed in ((2, 3), (4, 8), (16, 21)):
            scaled = functional_sample(self.f, self.model, n, 1.0, 256, seed)
            direct = functional_direct_sample(self.f, self.model, n, 1.0, 256,
                                              seed)
            self.assertAlmostEqual(direct, scaled,
                                   delta=1e-8 * max(1.0, abs(scaled)))

    def test_direct_set_matches_functional_set(self):
        scaled = functional_set(self.f, self.model, 4, 1.0, 64, 40, 5)
        direct = functional_direct_set(self.f, self.model, 4, 1.0, 64, 40, 5)
        self.assertEqual(direct.tag, 'functional_direct')
        np.testing.assert_allclose(direct.values, scaled.values, rtol=1e-8,
                                   atol=1e-10)

    def test_first_order_mean_matches_exact_mean(self):
        f = gaussian_density(1.0)
        sample = first_order_set(f, self.model, 16, 1.0, 256, 400, 31)
        exact = first_order_mean(f, self.model, 16, 1.0).value
        stderr = math.sqrt(sample.variance() / len(sample))
        self.assertLess(abs(sample.mean() - exact),
                        4.0 * stderr + 0.01 * exact)

    def test_functional_is_heavier_tailed_than_normal(self):
        sample = functional_set(self.f, self.model, 64, 1.0, 1024, 2000, 77)
        self.assertGreater(sample.kurtosis(), 3.0)


class LocalTimeTestCase(unittest.TestCase):
    """ Local Time Test Case """

    def test_richardson_removes_power_bias(self):
        model = HurstModel(0.6)
        kappa = (1.0 - model.hd) / model.H
        epsilons = np.array([0.4, 0.2, 0.1])
        values = 1.25 + 0.7 * epsilons ** kappa
        np.testing.assert_allclose(richardson_local_time(values, model),
                                   [1.25, 1.25], rtol=1e-12)

    def test_epsilon_floor(self):
        model = HurstModel(0.6)
        path = generate_path(model, 1.0, 256, 5)
        floor = path.spacing ** model.H
        self.assertGreater(local_time_estimate(path, 4.0 * floor), 0.0)
        with self.assertRaises(PyFbmCltPreconditionException):
            local_time_estimate(path, 0.5 * floor)

    def test_far_level_has_no_local_time(self):
        path = generate_path(HurstModel(0.6), 1.0, 256, 5)
        epsilon = default_epsilon(path.model, 1.0, 256)
        self.assertLess(local_time_estimate(path, epsilon, level=50.0), 1e-8)
        self.assertGreater(local_time_estimate(path, epsilon), 0.0)

    def test_default_epsilon(self):
        model = HurstModel(0.6)
        self.assertAlmostEqual(default_epsilon(model, 1.0, 1024),
                               4.0 * 1024 ** -0.6)
        self.assertAlmostEqual(default_epsilon(model, 1.0, 1024, 2),
                               16.0 * 1024 ** -0.6)

    def test_limit_law_sample_is_seeded(self):
        model = HurstModel(0.6)
        f = gaussian_diff(1.0, 2.0)
        a = limit_law_sample(f, model, 1.0, 256, 17, 2.0, 0.5)
        b = limit_law_sample(f, model, 1.0, 256, 17, 2.0, 0.5)
        self.assertEqual(a, b)
        with self.assertRaises(PyFbmCltRegimeException):
            limit_law_sample(f, HurstModel(0.45), 1.0, 256, 17, 2.0, 0.5)

    def test_limit_law_is_symmetric_mixed_normal(self):
        model = HurstModel(0.6)
        f = gaussian_diff(1.0, 2.0)
        constant = c_closed(model)
        norm_squared = norm_fourier(f, model.beta).value
        sample = limit_law_set(f, model, 1.0, 1024, 2000, 19, constant,
                               math.sqrt(norm_squared))
        positive = int(np.sum(sample.values > 0.0))
        self.assertGreater(binomtest(positive, len(sample)).pvalue, 1e-3)

        # E X^2 = C ||f||^2 E L_1(0); the kernel estimate keeps a small bias
        expected = constant * norm_squared \
            * local_time_moments(model, 1.0)[0].value
        self.assertLess(abs(sample.moment(2) - expected),
                        4.0 * sample.moment_stderr(2) + 0.05 * expected)
        self.assertGreater(sample.kurtosis(), 3.0)

    @unittest.skipUnless(full_tier(), "full tier only")
    def test_oracles(self):
        study = local_time_study(HurstModel(0.6), 1.0, 2 ** 16, 10000, 42,
                                 epsilon=0.02, halvings=2,
                                 workers=getTestConfig()['workers'])
        self.assertTrue(study['bias_shrinks'], study['levels'])
        self.assertLess(abs(study['mean_z']), 3.0)
        self.assertLess(abs(study['second_moment_z']), 3.0)


class EnsembleTestCase(unittest.TestCase):
    """ Ensemble Test Case """

    def test_worker_count_does_not_change_results(self):
        model = HurstModel(0.6)
        task = functools.partial(functional_sample, gaussian_diff(1.0, 2.0),
                                 model, 2, 1.0, 64)
        serial = run_ensemble(task, 99, 9, workers=1)
        parallel = run_ensemble(task, 99, 9, workers=2)
        self.assertTrue(np.array_equal(serial, parallel))
        self.assertEqual(run_ensemble(task, 99, 0).size, 0)


class ChecksTestCase(unittest.TestCase):
    """ Checks Test Case """

    def test_ks_two_sample(self):
        sample = np.linspace(-1.0, 1.0, 50)
        statistic, pvalue = ks_two_sample(sample, sample)
        self.assertEqual(statistic, 0.0)
        self.assertAlmostEqual(pvalue, 1.0)
        statistic, pvalue = ks_two_sample(sample, sample + 5.0)
        self.assertEqual(statistic, 1.0)
        self.assertLess(pvalue, 1e-6)
        with self.assertRaises(PyFbmCltDomainException):
            ks_two_sample(sample, [])

    def test_ks_accepts_same_law(self):
        rng = np.random.default_rng(2718)
        accepted = sum(
            1 for _ in range(100)
            if ks_two_sample(rng.standard_normal(2000),
                             rng.standard_normal(2000))[1] > 1e-3)
        self.assertGreaterEqual(accepted, 99)

    def test_even_moment_limits(self):
        model = HurstModel(0.6)
        f = gaussian_diff(1.0, 2.0)
        result = even_moment_check(f, model, 2, 1.0, 64, 30, 4)
        self.assertEqual([row['m'] for row in result['rows']],
                         [[2, 0], [0, 2], [2, 2], [4, 0], [0, 4]])
        # E W(L_{1/2}(0))^2 = E L_{1/2}(0)
        scale = c_closed(model) * norm_fourier(f, model.beta).value
        expected = scale * (2.0 * math.pi) ** -0.5 * 0.5 ** 0.4 / 0.4
        self.assertAlmostEqual(result['rows'][0]['limit'], expected,
                               delta=1e-6 * expected)
        for row in result['rows']:
            self.assertGreater(row['limit'], 0.0)
            self.assertGreater(row['estimate'], 0.0)

    def test_even_moments_are_homogeneous(self):
        model = HurstModel(0.6)
        f = gaussian_diff(1.0, 2.0)
        one = even_moment_check(f, model, 2, 1.0, 64, 20, 9)
        two = even_moment_check(f.scaled(2.0), model, 2, 1.0, 64, 20, 9)
        for a, b in zip(one['rows'], two['rows']):
            factor = 2.0 ** sum(a['m'])
            self.assertAlmostEqual(b['estimate'], factor * a['estimate'],
                                   delta=1e-10 * factor * a['estimate'])
            self.assertAlmostEqual(b['limit'], factor * a['limit'],
                                   delta=1e-6 * factor * a['limit'])

    def test_acceptance_reports_finite_n_variance(self):
        model = HurstModel(0.6)
        f = gaussian_diff(1.0, 2.0)
        report, _ = clt_acceptance(f, model, 1.0, 2, 64, 30, 6)
        finite_n = report['finite_n']
        self.assertAlmostEqual(finite_n['exact_variance'],
                               functional_variance(f, model, 2, 1.0).value)
        self.assertAlmostEqual(
            finite_n['exact_to_limit'],
            finite_n['exact_variance'] / report['predicted_variance'])
        self.assertIn('finite_n_variance', report['checks'])

        report, _ = clt_acceptance(odd_gaussian(), model, 1.0, 2, 64, 30, 6)
        self.assertIsNone(report['finite_n'])
        self.assertNotIn('finite_n_variance', report['checks'])

    def test_n_doubling_majority(self):
        result = n_doubling_diagnostic(gaussian_diff(1.0, 2.0),
                                       HurstModel(0.6), 1.0, 2, 4, 64, 20, 3,
                                       repetitions=3)
        self.assertEqual(len(result['rows']), 3)
        self.assertEqual(result['required'], 2)
        self.assertEqual(result['passed'], result['improved'] >= 2)

    def test_odd_moments_cancel_antithetically(self):
        result = odd_moment_check(odd_gaussian(), HurstModel(0.6), 2, 1.0, 64,
                                  20, 8, antithetic=True)
        self.assertTrue(result['passed'], result)
        for row in result['rows']:
            self.assertEqual(row['estimate'], 0.0)

    def test_scaling_marks_must_be_grid_points(self):
        with self.assertRaises(PyFbmCltPreconditionException):
            increment_moment_scaling(gaussian_diff(1.0, 2.0),
                                     HurstModel(0.6), 2, 64, 10, 1, 1,
                                     offset=0.3)

    def test_degenerate_limit(self):
        with self.assertRaises(PyFbmCltDomainException):
            clt_acceptance(zero(), HurstModel(0.6), 1.0, 2, 64, 10, 1)

    @unittest.skipUnless(full_tier(), "full tier only")
    def test_desk_scale_clt(self):
        workers = getTestConfig()['workers']
        model = HurstModel(0.6)
        f = gaussian_diff(1.0, 2.0)
        report, samples = clt_acceptance(f, model, 1.0, 256, 2 ** 14, 2000,
                                         11, workers=workers)
        self.assertEqual([s.tag for s in samples],
                         ['functional', 'limit_law'])
        self.assertTrue(report['checks']['variance_ratio'], report)
        self.assertTrue(report['checks']['finite_n_variance'], report)
        # finite n sits below the limit variance
        self.assertLess(report['finite_n']['exact_to_limit'], 1.0)
        self.assertGreater(report['finite_n']['exact_to_limit'], 0.8)
        self.assertGreater(report['kurtosis'], 3.0)

        odd = odd_moment_check(f, model, 256, 1.0, 2 ** 14, 2000, 12,
                               workers=workers)
        self.assertTrue(odd['passed'], odd)
        doubling = n_doubling_diagnostic(f, model, 1.0, 128, 512, 2 ** 14,
                                         2000, 13, workers=workers)
        self.assertEqual(len(doubling['rows']), 10)
        self.assertTrue(doubling['passed'], doubling)

    @unittest.skipUnless(full_tier(), "full tier only")
    def test_desk_scale_even_moments(self):
        model = HurstModel(0.6)
        result = even_moment_check(gaussian_diff(1.0, 2.0), model, 256, 1.0,
                                   2 ** 14, 2000, 14,
                                   workers=getTestConfig()['workers'])
        rows = dict((tuple(row['m']), row) for row in result['rows'])
        self.assertTrue(rows[(2, 0)]['passed'], rows)
        self.assertTrue(rows[(0, 2)]['passed'], rows)
        for row in result['rows']:
            self.assertGreater(row['ratio'], 0.5, row)
            self.assertLess(row['ratio'], 1.5, row)

    @unittest.skipUnless(full_tier(), "full tier only")
    def test_increment_scaling(self):
        result = increment_moment_scaling(
            gaussian_diff(1.0, 2.0), HurstModel(0.6), 64, 4096, 1000, 1, 21,
            workers=getTestConfig()['workers'])
        self.assertTrue(result['passed'], result)
        self.assertAlmostEqual(result['variance_ratio'],
                               result['predicted_variance_ratio'], delta=0.2)


if __name__ == '__main__':
    unittest.main()
