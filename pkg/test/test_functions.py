__author__ = 'pyfbmclt developers'
import math
import os
import pickle
import unittest

os.environ['DEBUG'] = "0"
os.environ['DEBUG_VERBOSE'] = "0"

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import gamma

from pyfbmclt.exceptions import PyFbmCltDomainException, \
    PyFbmCltUnsupportedException, PyFbmCltUsageException
from pyfbmclt.functions import c_beta_d, fourier_kernel_integral, \
    from_spec, gaussian_density, gaussian_diff, norm_direct, norm_fourier, \
    norm_gap, odd_gaussian, random_mixture, zero, _radial_cos_integral, \
    _sphere_moment

NORM_BETAS = (0.25, 0.5, 2.0 / 3.0, 0.9)


class TestFunctionTestCase(unittest.TestCase):
    """ Test Function Test Case """

    def test_gaussian_diff_has_zero_mass(self):
        f = gaussian_diff(1.0, 2.0)
        self.assertEqual(f.integral, 0.0)
        x = np.linspace(-40.0, 40.0, 40001)
        self.assertAlmostEqual(trapezoid(f(x[:, None]), x), 0.0, places=10)

    def test_transform_at_origin_is_mass(self):
        f = gaussian_density(0.7, 2)
        self.assertAlmostEqual(float(f.transform(np.zeros(2))), 1.0)
        self.assertEqual(float(gaussian_diff(1.0, 3.0).transform([0.0])), 0.0)

    def test_odd_gaussian(self):
        f = odd_gaussian()
        self.assertAlmostEqual(float(f([1.0])), math.exp(-0.5))
        self.assertAlmostEqual(float(f([-1.0])), -math.exp(-0.5))
        # F(x e^{-x^2/2})(xi) = i sqrt(2 pi) xi e^{-xi^2/2}
        self.assertAlmostEqual(complex(f.transform([2.0])).imag,
                               math.sqrt(2.0 * math.pi) * 2.0 * math.exp(-2.0))

    def test_from_spec(self):
        self.assertEqual(from_spec('gaussian-diff:1,2').label,
                         'gaussian-diff:1,2')
        self.assertEqual(from_spec('gaussian:2', 2).dim, 2)
        self.assertEqual(from_spec('zero', 3).dim, 3)
        self.assertEqual(from_spec('odd-gaussian').label, 'odd-gaussian')
        with self.assertRaises(PyFbmCltUsageException):
            from_spec('gaussian-diff:1')
        with self.assertRaises(PyFbmCltUsageException):
            from_spec('triangle')
        with self.assertRaises(PyFbmCltUnsupportedException):
            from_spec('odd-gaussian', 2)

    def test_equal_widths_rejected(self):
        with self.assertRaises(PyFbmCltDomainException):
            gaussian_diff(1.0, 1.0)

    def test_pickles(self):
        f = gaussian_diff(1.0, 2.0).scaled(3.0)
        again = pickle.loads(pickle.dumps(f))
        self.assertAlmostEqual(float(again([0.5])), float(f([0.5])))

    def test_scaled_and_reflected(self):
        f = odd_gaussian()
        self.assertAlmostEqual(float(f.reflected()([1.0])),
                               -float(f([1.0])))
        self.assertAlmostEqual(float(f.scaled(2.0)([1.0])),
                               2.0 * float(f([1.0])))


class KernelConstantTestCase(unittest.TestCase):
    """ Kernel Constant Test Case """

    def test_pi_anchor(self):
        self.assertAlmostEqual(c_beta_d(1.0, 1).value, math.pi, delta=1e-8)

    def test_radial_integral_closed_form(self):
        for beta in NORM_BETAS + (1.5,):
            expected = math.pi / (2.0 * gamma(beta + 1.0)
                                  * math.sin(math.pi * beta / 2.0))
            self.assertAlmostEqual(_radial_cos_integral(beta, 1.0).value,
                                   expected, delta=1e-9 * expected)

    def test_radial_integral_scales(self):
        # int (1 - cos(a u)) u^{-beta-1} du = a^beta * (value at a = 1)
        beta = 0.5
        base = _radial_cos_integral(beta, 1.0).value
        self.assertAlmostEqual(_radial_cos_integral(beta, 3.0).value,
                               3.0 ** beta * base, delta=1e-8)

    def test_sphere_moments(self):
        for beta in (0.5, 1.0, 1.5):
            circle = 2.0 * math.sqrt(math.pi) * gamma((beta + 1.0) / 2.0) \
                / gamma(beta / 2.0 + 1.0)
            self.assertAlmostEqual(_sphere_moment(beta, [1.0, 0.0]).value,
                                   circle, delta=1e-9)
            self.assertAlmostEqual(
                _sphere_moment(beta, [0.0, 0.0, 1.0]).value,
                4.0 * math.pi / (beta + 1.0), delta=1e-8)

    def test_rotation_invariance(self):
        for d in (2, 3):
            value = c_beta_d(0.5, d).value
            self.assertGreater(value, 0.0)

    def test_kernel_integral_factors(self):
        beta = 0.5
        c = c_beta_d(beta, 2).value
        x = np.array([0.6, -1.1])
        value = fourier_kernel_integral(beta, x).value
        self.assertAlmostEqual(value / np.linalg.norm(x) ** beta, c,
                               delta=1e-6 * c)
        one = fourier_kernel_integral(beta, [2.0]).value
        self.assertAlmostEqual(one, 2.0 ** beta * c_beta_d(beta, 1).value,
                               delta=1e-8)

    def test_bad_beta(self):
        with self.assertRaises(PyFbmCltDomainException):
            c_beta_d(2.0, 1)
        with self.assertRaises(PyFbmCltUnsupportedException):
            c_beta_d(0.5, 4)


class NormTestCase(unittest.TestCase):
    """ Norm Test Case """

    def test_identity_d1(self):
        for f in (gaussian_diff(1.0, 2.0), odd_gaussian()):
            for beta in NORM_BETAS:
                direct = norm_direct(f, beta)
                fourier = norm_fourier(f, beta)
                self.assertGreater(direct.value, 0.0)
                self.assertLess(norm_gap(direct, fourier), 1e-6,
                                (f.label, beta, direct, fourier))

    def test_identity_d2(self):
        f = gaussian_diff(1.0, 2.0, 2)
        direct = norm_direct(f, 0.5)
        fourier = norm_fourier(f, 0.5)
        self.assertLess(norm_gap(direct, fourier), 1e-6, (direct, fourier))

    def test_scaling(self):
        # f(x) -> f(x / s) multiplies the squared norm by s^{2d + beta}
        beta, s = 0.5, 2.0
        f = gaussian_diff(1.0, 2.0)
        g = gaussian_diff(s, 2.0 * s).scaled(s)
        ratio = norm_fourier(g, beta).value / norm_fourier(f, beta).value
        self.assertAlmostEqual(ratio, s ** (2.0 + beta), delta=1e-7)

    def test_random_mixtures_are_nonnegative(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            f = random_mixture(rng)
            self.assertGreaterEqual(norm_fourier(f, 0.7).value, 0.0)

    def test_zero_function(self):
        self.assertEqual(norm_gap(norm_direct(zero(), 0.5),
                                  norm_fourier(zero(), 0.5)), 0.0)

    def test_nonzero_mass_rejected(self):
        with self.assertRaises(PyFbmCltDomainException):
            norm_direct(gaussian_density(), 0.5)
        with self.assertRaises(PyFbmCltDomainException):
            norm_fourier(gaussian_diff(1.0, 2.0), 2.5)

    def test_unsupported_dimension(self):
        with self.assertRaises(PyFbmCltUnsupportedException):
            norm_direct(gaussian_diff(1.0, 2.0, 3), 0.5)


if __name__ == '__main__':
    unittest.main()
