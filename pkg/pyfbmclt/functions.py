"""
Test functions and the H_0^beta norm.

    ||f||_beta^2 = - int int f(x) f(y) |x - y|^beta dx dy
                 = c_{beta,d}^-1 int |Ff(xi)|^2 |xi|^(-beta-d) dxi

with Ff(xi) = int e^{i x.xi} f(x) dx and

    c_{beta,d} = int (1 - cos(x.xi)) |xi|^(-beta-d) dxi,  |x| = 1.

Evaluators are functools.partial objects over module level functions so
that TestFunction instances survive pickling into worker processes.
"""
__author__ = 'pyfbmclt developers'

import functools
import math

import numpy as np
from scipy.special import gamma

from .constants import SUPPORT_TAIL, ZERO_INTEGRAL_TOL
from .exceptions import PyFbmCltDomainException, \
    PyFbmCltUnsupportedException, PyFbmCltUsageException, \
    PyFbmCltVerificationException
from .quadrature import adaptive, compare_rules, gauss_jacobi, \
    gauss_legendre_panels, tensor_rule
from .types import QuadResult, TestFunction
from .utils import dlog, parse_float_list

ROTATION_TOL = 1e-8
# angular nodes when the transform is not radial (d = 2)
FOURIER_ANGLES = 64
# points per chunk of shifted evaluations in the direct norm
DIRECT_CHUNK = 2 ** 21


#
# evaluators
#
def _mixture_values(weights, sigmas, dim, x):
    x = np.asarray(x, dtype=np.float64)
    r2 = np.sum(x * x, axis=-1)
    out = np.zeros(r2.shape)
    for w, s in zip(weights, sigmas):
        out += w * (2.0 * np.pi * s * s) ** (-dim / 2.0) \
            * np.exp(-r2 / (2.0 * s * s))
    return out


def _mixture_transform(weights, sigmas, xi):
    xi = np.asarray(xi, dtype=np.float64)
    r2 = np.sum(xi * xi, axis=-1)
    out = np.zeros(r2.shape)
    for w, s in zip(weights, sigmas):
        out += w * np.exp(-0.5 * s * s * r2)
    return out


def _odd_gaussian_values(x):
    x0 = np.asarray(x, dtype=np.float64)[..., 0]
    return x0 * np.exp(-0.5 * x0 * x0)


def _odd_gaussian_transform(xi):
    xi0 = np.asarray(xi, dtype=np.float64)[..., 0]
    return 1j * math.sqrt(2.0 * np.pi) * xi0 * np.exp(-0.5 * xi0 * xi0)


def _zero_values(x):
    return np.zeros(np.asarray(x).shape[:-1])


def _support_radius(sigma):
    return sigma * math.sqrt(-2.0 * math.log(SUPPORT_TAIL)) + 1.0


#
# constructors
#
def gaussian_mixture(weights, sigmas, d=1, label=None):
    weights = tuple(float(w) for w in weights)
    sigmas = tuple(float(s) for s in sigmas)
    if len(weights) != len(sigmas) or not weights:
        raise PyFbmCltDomainException(
            "a mixture needs as many weights as widths", [])
    if min(sigmas) <= 0.0:
        raise PyFbmCltDomainException(
            "mixture widths must be positive, got %r" % (sigmas,), [])
    if label is None:
        label = 'mixture(%s)' % ','.join(
            '%g@%g' % pair for pair in zip(weights, sigmas))
    return TestFunction(
        d, functools.partial(_mixture_values, weights, sigmas, d),
        functools.partial(_mixture_transform, weights, sigmas),
        support_radius=_support_radius(max(sigmas)), label=label,
        integral=sum(weights), radial_fourier=True, width=min(sigmas),
        mixture=(weights, sigmas))


def gaussian_diff(sigma1, sigma2, d=1):
    """
    Difference of two centred Gaussian densities; a member of H_0^beta.
    """
    if sigma1 == sigma2:
        raise PyFbmCltDomainException(
            "gaussian_diff needs two different widths, got %r twice"
            % sigma1, [])
    return gaussian_mixture((1.0, -1.0), (sigma1, sigma2), d,
                            label='gaussian-diff:%g,%g' % (sigma1, sigma2))


def gaussian_density(sigma=1.0, d=1):
    """Centred Gaussian density; integrates to one (first order tests)."""
    return gaussian_mixture((1.0,), (sigma,), d, label='gaussian:%g' % sigma)


def odd_gaussian():
    """x exp(-x^2/2) on the line."""
    return TestFunction(1, _odd_gaussian_values, _odd_gaussian_transform,
                        support_radius=_support_radius(1.0),
                        label='odd-gaussian', integral=0.0,
                        radial_fourier=False, width=1.0)


def zero(d=1):
    return TestFunction(d, _zero_values, _zero_values, support_radius=1.0,
                        label='zero', integral=0.0, radial_fourier=True)


def random_mixture(rng, d=1, k=3):
    """Random zero-mass Gaussian mixture, used for positivity sweeps."""
    sigmas = rng.uniform(0.5, 2.0, size=k)
    weights = rng.standard_normal(k)
    weights -= weights.mean()
    return gaussian_mixture(weights, sigmas, d)


def from_spec(text, d=1):
    """
    'gaussian-diff:1,2' | 'gaussian:1' | 'odd-gaussian' | 'zero'
    """
    if isinstance(text, TestFunction):
        return text
    name, _, args = str(text).strip().partition(':')
    values = parse_float_list(args) if args else []
    if name == 'gaussian-diff':
        if len(values) != 2:
            raise PyFbmCltUsageException(
                "gaussian-diff takes two widths, got %r" % text, [])
        return gaussian_diff(values[0], values[1], d)
    if name == 'gaussian':
        return gaussian_density(values[0] if values else 1.0, d)
    if name == 'odd-gaussian':
        if d != 1:
            raise PyFbmCltUnsupportedException(
                "odd-gaussian is defined for d=1 only", [])
        return odd_gaussian()
    if name == 'zero':
        return zero(d)
    raise PyFbmCltUsageException("unknown test function %r" % text, [])


#
# direct norm
#
def _require_member(f, beta):
    if not 0.0 < beta < 2.0:
        raise PyFbmCltDomainException(
            "beta must satisfy 0 < beta < 2, got %r" % beta, [])
    if abs(f.integral) > ZERO_INTEGRAL_TOL:
        raise PyFbmCltDomainException(
            "%s is not in H_0^beta: int f = %r" % (f.label, f.integral), [])


def _radial_rule(length, panels, order, exponent):
    """Rule for int_0^length r^exponent g(r) dr, g smooth."""
    step = length / panels
    r0, w0 = gauss_jacobi(0.0, step, order, exponent)
    if panels == 1:
        return r0, w0
    r1, w1 = gauss_legendre_panels(step, length, panels - 1, order)
    return np.concatenate([r0, r1]), np.concatenate([w0, w1 * r1 ** exponent])


def _autocorrelation(f, points, weights, shifts):
    """A(z) = int f(x) f(x + z) dx on a list of shifts z, shape (k, d)."""
    base = f(points) * weights
    chunk = max(1, DIRECT_CHUNK // max(1, points.shape[0]))
    out = np.empty(shifts.shape[0])
    for start in range(0, shifts.shape[0], chunk):
        z = shifts[start:start + chunk]
        values = f(points[None, :, :] + z[:, None, :])
        out[start:start + chunk] = values @ base
    return out


def _direct_1d(f, beta, order):
    radius = f.support_radius
    panels = int(math.ceil(2.0 * radius / f.width))
    x, wx = gauss_legendre_panels(-radius, radius, panels, order)
    z, wz = _radial_rule(2.0 * radius, panels, order, beta)
    a = _autocorrelation(f, x[:, None], wx, z[:, None])
    # A is even
    return -2.0 * np.dot(wz, a), x.size * z.size


def _direct_2d(f, beta, order, angles):
    radius = f.support_radius
    panels = int(math.ceil(radius / f.width))
    points, weights = tensor_rule(
        [gauss_legendre_panels(-radius, radius, panels, order)] * 2)
    r, wr = _radial_rule(2.0 * radius, panels, order, beta + 1.0)
    theta = np.pi * np.arange(angles) / angles
    rr, tt = np.meshgrid(r, theta, indexing='ij')
    shifts = np.stack([(rr * np.cos(tt)).ravel(),
                       (rr * np.sin(tt)).ravel()], axis=-1)
    a = _autocorrelation(f, points, weights, shifts).reshape(rr.shape)
    # trapezoid over the half circle, doubled by A(z) = A(-z)
    total = 2.0 * (np.pi / angles) * np.dot(wr, a.sum(axis=1))
    return -total, points.shape[0] * shifts.shape[0]


def norm_direct(f, beta):
    """
    ||f||^2 from the double integral, written as -int |z|^beta A(z) dz.
    The error estimate is the gap to a coarser rule.
    """
    _require_member(f, beta)
    if f.dim == 1:
        fine, n_fine = _direct_1d(f, beta, 16)
        coarse, n_coarse = _direct_1d(f, beta, 12)
    elif f.dim == 2:
        fine, n_fine = _direct_2d(f, beta, 10, 16)
        coarse, n_coarse = _direct_2d(f, beta, 8, 12)
    else:
        raise PyFbmCltUnsupportedException(
            "direct norm is implemented for d <= 2, got d=%d" % f.dim, [])

    result = compare_rules(fine, coarse, n_fine + n_coarse)
    dlog("direct ||%s||^2_%g = %.12g +- %.3g", f.label, beta,
         result.value, result.error)
    if result.value < -(10.0 * result.error + 1e-12):
        raise PyFbmCltDomainException(
            "%s gives a negative squared norm %.6g for beta=%r"
            % (f.label, result.value, beta), [])
    return result


#
# Fourier side
#
def _one_minus_cos_over_square(a, u):
    if u == 0.0:
        return 0.5 * a * a
    half = math.sin(0.5 * a * u)
    return 2.0 * half * half / (u * u)


def _power(exponent, u):
    return u ** exponent


def _radial_cos_integral(beta, a):
    """int_0^inf (1 - cos(a u)) u^(-beta-1) du, a >= 0."""
    if a == 0.0:
        return QuadResult(0.0)
    # (1 - cos(a u))/u^2 is smooth, u^(1-beta) goes into the weight
    head = adaptive(functools.partial(_one_minus_cos_over_square, a),
                    0.0, 1.0, weight='alg', wvar=(1.0 - beta, 0.0),
                    label='1-cos head')
    oscillating = adaptive(functools.partial(_power, -beta - 1.0),
                           1.0, np.inf, weight='cos', wvar=a,
                           label='cos tail')
    return head + QuadResult(1.0 / beta) + oscillating.scaled(-1.0)


def _unit(x):
    x = np.asarray(x, dtype=np.float64).ravel()
    length = np.linalg.norm(x)
    if length == 0.0:
        raise PyFbmCltDomainException("direction must be nonzero", [])
    return x / length


def _circle_kinks(x0, x1):
    # zeros of x0 cos + x1 sin on [0, 2 pi)
    first = math.atan2(-x0, x1) % np.pi
    return [first, first + np.pi]


def _sphere_moment(beta, x):
    """int over S^{d-1} of |x.w|^beta, d = 2 or 3."""
    x = _unit(x)
    if x.size == 2:
        def integrand(theta):
            return abs(x[0] * math.cos(theta) + x[1] * math.sin(theta)) ** beta

        return adaptive(integrand, 0.0, 2.0 * np.pi,
                        points=_circle_kinks(x[0], x[1]), label='S^1 moment')

    def inner(phi):
        a = x[0] * math.cos(phi) + x[1] * math.sin(phi)

        def integrand(theta):
            return abs(a * math.sin(theta) + x[2] * math.cos(theta)) ** beta \
                * math.sin(theta)

        points = None
        if x[2] != 0.0:
            points = [math.atan2(abs(x[2]), -a * math.copysign(1.0, x[2]))]
        return adaptive(integrand, 0.0, np.pi, points=points,
                        label='S^2 moment inner').value

    return adaptive(inner, 0.0, 2.0 * np.pi, points=_circle_kinks(x[0], x[1]),
                    epsabs=1e-11, epsrel=1e-11, label='S^2 moment')


def c_beta_d(beta, d):
    """
    c_{beta,d} as (radial integral) x (moment of |x.w|^beta over the unit
    sphere); for d >= 2 the sphere moment is evaluated along two directions
    and must agree.
    """
    if not 0.0 < beta < 2.0:
        raise PyFbmCltDomainException(
            "c_{beta,d} needs 0 < beta < 2, got beta=%r" % beta, [])
    if int(d) != d or d < 1:
        raise PyFbmCltDomainException("bad dimension d=%r" % (d,), [])
    radial = _radial_cos_integral(beta, 1.0)
    if d == 1:
        return radial.scaled(2.0)
    if d > 3:
        raise PyFbmCltUnsupportedException(
            "c_{beta,d} is implemented for d <= 3, got d=%d" % d, [])

    axis = np.zeros(d)
    axis[0] = 1.0
    diagonal = np.zeros(d)
    diagonal[:2] = 1.0
    along_axis = _sphere_moment(beta, axis)
    along_diagonal = _sphere_moment(beta, diagonal)
    gap = abs(along_axis.value - along_diagonal.value)
    if gap > ROTATION_TOL * max(1.0, along_axis.value):
        raise PyFbmCltVerificationException(
            "c_{beta,d} is not rotation invariant for beta=%r d=%d"
            % (beta, d), [('rotation', "directions differ by %.3g" % gap)])
    return radial * along_axis


def fourier_kernel_integral(beta, x):
    """
    int (1 - cos(x.xi)) |xi|^(-beta-d) dxi at an arbitrary x, by nested
    quadrature along rays (no factoring of |x|^beta); d <= 2.
    """
    if not 0.0 < beta < 2.0:
        raise PyFbmCltDomainException(
            "the kernel integral needs 0 < beta < 2, got beta=%r" % beta, [])
    x = np.asarray(x, dtype=np.float64).ravel()
    if x.size == 1:
        return _radial_cos_integral(beta, abs(float(x[0]))).scaled(2.0)
    if x.size != 2:
        raise PyFbmCltUnsupportedException(
            "the kernel integral is implemented for d <= 2, got d=%d"
            % x.size, [])
    if not np.any(x):
        return QuadResult(0.0)

    def ray(theta):
        a = abs(x[0] * math.cos(theta) + x[1] * math.sin(theta))
        return _radial_cos_integral(beta, a).value

    return adaptive(ray, 0.0, 2.0 * np.pi, points=_circle_kinks(x[0], x[1]),
                    epsabs=1e-9, epsrel=1e-9, label='kernel integral')


def _sphere_area(d):
    return 2.0 * np.pi ** (d / 2.0) / gamma(d / 2.0)


def _on_axis(d, r):
    xi = np.zeros(d)
    xi[0] = r
    return xi


def _spectral_density(f, beta, r):
    # |xi|^{d-1} |xi|^{-beta-d} folded into r^{-beta-1}
    weight = r ** (-beta - 1.0)
    if f.radial_fourier:
        return abs(f.transform(_on_axis(f.dim, r))) ** 2 * weight \
            * _sphere_area(f.dim)
    if f.dim == 1:
        return (abs(f.transform(np.array([r]))) ** 2
                + abs(f.transform(np.array([-r]))) ** 2) * weight
    theta = 2.0 * np.pi * np.arange(FOURIER_ANGLES) / FOURIER_ANGLES
    xi = r * np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    return np.sum(np.abs(f.transform(xi)) ** 2) \
        * (2.0 * np.pi / FOURIER_ANGLES) * weight


def norm_fourier(f, beta):
    """||f||^2 = c_{beta,d}^-1 int |Ff|^2 |xi|^(-beta-d) dxi."""
    if not f.has_fourier():
        raise PyFbmCltUnsupportedException(
            "%s carries no Fourier transform" % f.label, [])
    _require_member(f, beta)
    if not f.radial_fourier and f.dim > 2:
        raise PyFbmCltUnsupportedException(
            "non radial transforms are supported for d <= 2, got d=%d"
            % f.dim, [])

    integral = adaptive(functools.partial(_spectral_density, f, beta),
                        0.0, np.inf, epsabs=1e-13, epsrel=1e-11,
                        label='|Ff|^2 %s' % f.label)
    result = integral / c_beta_d(beta, f.dim)
    dlog("fourier ||%s||^2_%g = %.12g +- %.3g", f.label, beta,
         result.value, result.error)
    return result


def norm_gap(direct, fourier):
    """Relative gap between the two norm evaluations."""
    scale = max(abs(direct.value), abs(fourier.value))
    if scale == 0.0:
        return 0.0
    return abs(direct.value - fourier.value) / scale
