"""
Gaussian side of the limit theorem: covariance matrices of fBm, local
nondeterminism probes, moments of W(L_t(0)) and the factorisation of the
phase integral behind the tightness bound.
"""
__author__ = 'pyfbmclt developers'

import functools
import math

import numpy as np
from scipy.special import gamma

from .constants import MAX_DET_PROBE_TIMES, MAX_SIMPLEX_DIMENSION
from .exceptions import PyFbmCltDomainException, \
    PyFbmCltQuadratureException, PyFbmCltRegimeException, \
    PyFbmCltUnsupportedException, PyFbmCltVerificationException
from .fbm import covariance_matrix
from .quadrature import adaptive, compare_rules, gauss_legendre, \
    gauss_legendre_panels, power_law_integral, tensor_rule
from .types import QuadResult, TimeConfig
from .utils import dlog

# E|sin(cZ)| switches from quadrature to its Fourier series here
SERIES_SWITCH = 0.5
SERIES_TERMS = 40
GAUSS_CUTOFF = 12.0

MOMENT_RULE = (4, 12)
MOMENT_RULE_COARSE = (3, 10)

# (geometric levels, Gauss points per panel) of the finite-n rules
FINITE_N_RULE = (30, 8)
FINITE_N_RULE_COARSE = (30, 6)


def _validate_times(times, strict=False):
    times = np.asarray(times, dtype=np.float64).ravel()
    if times.size == 0:
        raise PyFbmCltDomainException("at least one time is needed", [])
    if not np.all(np.isfinite(times)):
        raise PyFbmCltDomainException(
            "times must be finite, got %r" % (times.tolist(),), [])
    if np.any(times <= 0.0):
        raise PyFbmCltDomainException(
            "times must be positive, got %r" % (times.tolist(),), [])
    steps = np.diff(times)
    if np.any(steps < 0.0):
        raise PyFbmCltDomainException(
            "times must be nondecreasing, got %r" % (times.tolist(),), [])
    if strict and np.any(steps == 0.0):
        raise PyFbmCltDomainException(
            "times must be distinct, got %r" % (times.tolist(),), [])
    return times


def cov_matrix(model, times):
    """
    Covariance of one component at the given times; the covariance of the
    d-dimensional vector is block diagonal with determinant det^d.
    """
    return covariance_matrix(model, _validate_times(times))


def _power_step(two_h, base, step):
    """(base + step)^2H - base^2H, accurate when step << base."""
    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        grown = base ** two_h * np.expm1(two_h * np.log1p(step / base))
    return np.where(base > 0.0, grown, step ** two_h)


def increment_covariance(H, gaps):
    """
    Covariance of the fBm increments over consecutive intervals of lengths
    ``gaps`` (shape (..., K)); returns shape (..., K, K).

    Off diagonal entries are written as differences of first differences
    in the smaller gap so that vanishing gaps keep full relative precision.
    """
    gaps = np.asarray(gaps, dtype=np.float64)
    two_h = 2.0 * H
    K = gaps.shape[-1]
    out = np.zeros(gaps.shape + (K,))
    for i in range(K):
        out[..., i, i] = gaps[..., i] ** two_h
        for j in range(i + 1, K):
            between = gaps[..., i + 1:j].sum(axis=-1)
            small = np.minimum(gaps[..., i], gaps[..., j])
            large = np.maximum(gaps[..., i], gaps[..., j])
            value = 0.5 * (_power_step(two_h, between + large, small)
                           - _power_step(two_h, between, small))
            out[..., i, j] = value
            out[..., j, i] = value
    return out


def increment_correlation(H, gaps):
    cov = increment_covariance(H, gaps)
    scale = np.asarray(gaps, dtype=np.float64) ** H
    denominator = scale[..., :, None] * scale[..., None, :]
    with np.errstate(divide='ignore', invalid='ignore'):
        corr = np.where(denominator > 0.0, cov / denominator, 0.0)
    K = corr.shape[-1]
    corr[..., np.arange(K), np.arange(K)] = 1.0
    return corr


def _gaps(times):
    return np.diff(np.concatenate([[0.0], times]))


def lnd_ratio(model, times, vectors):
    """
    Var(sum u_i . (B(s_i) - B(s_{i-1}))) / sum |u_i|^2 (s_i - s_{i-1})^2H.
    """
    times = _validate_times(times)
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.ndim == 1:
        vectors = vectors.reshape(times.size, -1)
    if vectors.shape[0] != times.size:
        raise PyFbmCltDomainException(
            "%d times but %d vectors" % (times.size, vectors.shape[0]), [])

    gaps = _gaps(times)
    squared = np.sum(vectors * vectors, axis=1)
    denominator = float(np.dot(squared, gaps ** (2.0 * model.H)))
    if denominator <= 0.0:
        raise PyFbmCltDomainException(
            "local nondeterminism ratio has a zero denominator", [])
    inner = vectors @ vectors.T
    variance = float(np.sum(inner * increment_covariance(model.H, gaps)))
    return variance / denominator


def det_bound_probe(model, times):
    """
    ((det A)^(-1/2) prod (s_i - s_{i-1})^H)^d for the one-component
    covariance A of B(s_1), ..., B(s_k).
    """
    times = _validate_times(times, strict=True)
    if times.size > MAX_DET_PROBE_TIMES:
        raise PyFbmCltUnsupportedException(
            "the determinant probe takes at most %d times, got %d"
            % (MAX_DET_PROBE_TIMES, times.size), [])
    try:
        factor = np.linalg.cholesky(covariance_matrix(model, times))
    except np.linalg.LinAlgError:
        raise PyFbmCltDomainException(
            "covariance at %r is numerically singular" % (times.tolist(),),
            [])
    logdet = 2.0 * np.sum(np.log(np.diag(factor)))
    exponent = -0.5 * logdet + model.H * np.sum(np.log(_gaps(times)))
    return float(np.exp(model.d * exponent))


def _random_times(rng, k):
    return np.sort(rng.uniform(0.0, 1.0, size=k))


def lnd_search(model, samples, k_max, seed):
    """Random sweep of lnd_ratio; the minimum is an empirical k_H proxy."""
    rng = np.random.default_rng(seed)
    ratios = np.empty(samples)
    for index in range(samples):
        k = int(rng.integers(1, k_max + 1))
        ratios[index] = lnd_ratio(model, _random_times(rng, k),
                                  rng.standard_normal((k, model.d)))
    return {'samples': samples, 'k_max': k_max,
            'min_ratio': float(ratios.min()),
            'max_ratio': float(ratios.max())}


def det_bound_search(model, samples, k_max, seed):
    rng = np.random.default_rng(seed)
    k_max = min(k_max, MAX_DET_PROBE_TIMES)
    largest = {}
    for _ in range(samples):
        k = int(rng.integers(1, k_max + 1))
        value = det_bound_probe(model, _random_times(rng, k))
        largest[k] = max(value, largest.get(k, 0.0))
    return {'samples': samples, 'k_max': k_max,
            'max_by_k': dict((str(k), v) for k, v in sorted(largest.items())),
            'max': max(largest.values())}


#
# moments of W(L_t(0))
#
def _smoothstep(s):
    return s ** 3 * (10.0 - 15.0 * s + 6.0 * s * s)


def _smoothstep_slope(s):
    return 30.0 * s * s * (1.0 - s) ** 2


def _double_factorial_odd(m):
    # (m - 1)!! for even m
    return math.factorial(m) / (2 ** (m // 2) * math.factorial(m // 2))


def _simplex_integral(config, panels, order):
    """
    int det(A(w))^(-d/2) dw over prod [a_i, b_i]^{k_i}, k_i = m_i / 2.

    Each block is reduced to its ordered simplex (factor k_i!) and
    parametrised by stick breaking, u_j = remaining_j * y_j. The
    substitution y = v^(1/(1-Hd)) absorbs the u^-Hd singularities and a
    smoothstep in every v flattens the endpoints.
    """
    model = config.model
    H, hd, d = model.H, model.hd, model.d
    p = 1.0 / (1.0 - hd)
    blocks = [(a, b, m // 2)
              for (a, b), m in zip(config.intervals, config.multi_index)]
    K = sum(k for _, _, k in blocks)

    nodes = gauss_legendre_panels(0.0, 1.0, panels, order)
    s, weights = tensor_rule([nodes] * K)
    v = _smoothstep(s)
    y = v ** p
    # 1 - y without cancellation, using 1 - smoothstep(s) = smoothstep(1 - s)
    rest = -np.expm1(p * np.log1p(-_smoothstep(1.0 - s)))

    jacobian = weights * np.prod(_smoothstep_slope(s), axis=1)
    gaps = np.empty_like(s)
    column = 0
    previous_end = 0.0
    leftover = np.zeros(s.shape[0])
    for a, b, k in blocks:
        lead = (a - previous_end) + leftover
        remaining = np.full(s.shape[0], b - a)
        for j in range(k):
            u = remaining * y[:, column]
            factor = p * remaining ** (1.0 - hd)
            if j == 0:
                with np.errstate(divide='ignore', invalid='ignore'):
                    share = np.where(lead > 0.0, u / (lead + u), 1.0)
                factor = factor * share ** hd
                gaps[:, column] = lead + u
            else:
                gaps[:, column] = u
            jacobian = jacobian * factor
            remaining = remaining * rest[:, column]
            column += 1
        jacobian = jacobian * math.factorial(k)
        leftover = remaining
        previous_end = b

    sign, logdet = np.linalg.slogdet(increment_correlation(H, gaps))
    if np.any(sign <= 0.0):
        raise PyFbmCltQuadratureException(
            "increment correlation lost definiteness on the simplex rule",
            float('nan'), [])
    return float(np.sum(jacobian * np.exp(-0.5 * d * logdet))), s.shape[0]


def interval_moment(config):
    """
    E prod_i (W(L_{b_i}(0)) - W(L_{a_i}(0)))^{m_i}: zero when some m_i is
    odd, otherwise

        prod_i (m_i - 1)!! (2 pi)^(-m_i d/4) int det(A(w))^(-1/2) dw.
    """
    if not config.all_even():
        return QuadResult(0.0, 0.0, True, 0)
    if config.dimension() > MAX_SIMPLEX_DIMENSION:
        raise PyFbmCltUnsupportedException(
            "moment integral has %d variables, at most %d are supported"
            % (config.dimension(), MAX_SIMPLEX_DIMENSION), [])

    d = config.model.d
    prefactor = 1.0
    for m in config.multi_index:
        prefactor *= _double_factorial_odd(m) \
            * (2.0 * np.pi) ** (-m * d / 4.0)

    fine, n_fine = _simplex_integral(config, *MOMENT_RULE)
    coarse, n_coarse = _simplex_integral(config, *MOMENT_RULE_COARSE)
    result = compare_rules(fine, coarse, n_fine + n_coarse).scaled(prefactor)
    dlog("moment %r = %.12g +- %.3g", config.as_dict(), result.value,
         result.error)
    return result


def _single_interval_moment(model, t, m):
    return interval_moment(TimeConfig([(0.0, t)], [m], model))


def moment_growth_check(model, t, k_max=3):
    """
    moment(m=2k) / [(2k)! t^{k(1-Hd)} Gamma(1-Hd)^k / Gamma(k(1-Hd)+1)]
    for k = 1..k_max; the ratios stay bounded by C^k.
    """
    if k_max > MAX_SIMPLEX_DIMENSION:
        raise PyFbmCltUnsupportedException(
            "moment growth is checked up to k=%d, got %d"
            % (MAX_SIMPLEX_DIMENSION, k_max), [])
    rho = 1.0 - model.hd
    rows = []
    for k in range(1, k_max + 1):
        moment = _single_interval_moment(model, t, 2 * k)
        scale = math.factorial(2 * k) * t ** (k * rho) * gamma(rho) ** k \
            / gamma(k * rho + 1.0)
        rows.append({'k': k, 'moment': moment.value, 'error': moment.error,
                     'ratio': moment.value / scale})
    return rows


def predicted_kurtosis(model, t):
    """Kurtosis of W(L_t(0)): 3 E L^2 / (E L)^2."""
    second = _single_interval_moment(model, t, 2)
    fourth = _single_interval_moment(model, t, 4)
    return fourth.value / second.value ** 2


def local_time_moments(model, t):
    """(E L_t(0), E L_t(0)^2) from the m=2 and m=4 moments."""
    second = _single_interval_moment(model, t, 2)
    fourth = _single_interval_moment(model, t, 4)
    return second, fourth.scaled(1.0 / 3.0)


#
# exact finite-n moments for Gaussian mixtures
#
def _mixture_of(f, model):
    if getattr(f, 'mixture', None) is None:
        raise PyFbmCltUnsupportedException(
            "exact finite-n moments need a Gaussian mixture, got %s"
            % f.label, [])
    if f.dim != model.d:
        raise PyFbmCltDomainException(
            "%s lives in d=%d but the model has d=%d"
            % (f.label, f.dim, model.d), [])
    weights, sigmas = f.mixture
    return np.asarray(weights, dtype=np.float64), \
        np.asarray(sigmas, dtype=np.float64)


def _scaled_horizon(n, t):
    if not n > 0:
        raise PyFbmCltDomainException("n must be positive, got %r" % n, [])
    if not t > 0:
        raise PyFbmCltDomainException("t must be positive, got %r" % t, [])
    return float(n) * float(t)


def _geometric_rule(length, levels, order):
    """
    Gauss-Legendre on [0, length] with panels [2^-(j+1), 2^-j] * length
    and a first panel [0, 2^-levels * length].
    """
    edges = length * np.concatenate(
        [[0.0], 2.0 ** -np.arange(levels, -1, -1, dtype=np.float64)])
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        x, w = gauss_legendre(lo, hi, order)
        nodes.append(x)
        weights.append(w)
    return np.concatenate(nodes), np.concatenate(weights)


def _mean_integral(weights, sigmas, model, horizon, levels, order):
    # int_0^T E f(B(u)) du with E f(B(u)) = sum w (2 pi (s^2 + u^2H))^(-d/2)
    u, w = _geometric_rule(horizon, levels, order)
    variance = sigmas[:, None] ** 2 + u[None, :] ** (2.0 * model.H)
    values = weights @ (2.0 * np.pi * variance) ** (-0.5 * model.d)
    return float(values @ w), u.size


def _second_integral(weights, sigmas, model, horizon, levels, order):
    """
    2 int_{u + r < T} E f(B(u)) f(B(u + r)) du dr; the pair expectation of
    two mixtures is sum w_i w_j (2 pi)^-d det(diag(s_i^2, s_j^2) + A)^(-d/2)
    with A the covariance of (B(u), B(u + r)).
    """
    H, d = model.H, model.d
    r, wr = _geometric_rule(horizon, levels, order)
    x, wx = _geometric_rule(1.0, levels, order)
    room = horizon - r
    u = (room[:, None] * x[None, :]).ravel()
    lag = np.repeat(r, x.size)
    w = (wr[:, None] * wx[None, :] * room[:, None]).ravel()

    cov = increment_covariance(H, np.stack([u, lag], axis=-1))
    det_a = cov[:, 0, 0] * cov[:, 1, 1] - cov[:, 0, 1] ** 2
    first = u ** (2.0 * H)
    second = (u + lag) ** (2.0 * H)

    values = np.zeros(u.size)
    for wi, si in zip(weights, sigmas):
        for wj, sj in zip(weights, sigmas):
            det = si * si * sj * sj + si * si * second + sj * sj * first \
                + det_a
            values += wi * wj * det ** (-0.5 * d)
    return 2.0 * (2.0 * np.pi) ** -d * float(values @ w), u.size


def functional_moments(f, model, n, t):
    """
    (E F_n(t), E F_n(t)^2) for a Gaussian mixture f, exact up to
    quadrature. By scaling both are integrals over [0, n t] of closed form
    Gaussian expectations.
    """
    weights, sigmas = _mixture_of(f, model)
    horizon = _scaled_horizon(n, t)
    scale = float(n) ** (model.hd - 1.0)

    mean_fine, count = _mean_integral(weights, sigmas, model, horizon,
                                      *FINITE_N_RULE)
    mean_coarse, extra = _mean_integral(weights, sigmas, model, horizon,
                                        *FINITE_N_RULE_COARSE)
    mean = compare_rules(mean_fine, mean_coarse, count + extra) \
        .scaled(math.sqrt(scale))

    second_fine, count = _second_integral(weights, sigmas, model, horizon,
                                          *FINITE_N_RULE)
    second_coarse, extra = _second_integral(weights, sigmas, model, horizon,
                                            *FINITE_N_RULE_COARSE)
    second = compare_rules(second_fine, second_coarse, count + extra) \
        .scaled(scale)
    dlog("finite-n moments of %s at n=%r t=%r: mean %.6g second %.6g",
         f.label, n, t, mean.value, second.value)
    return mean, second


def functional_variance(f, model, n, t):
    mean, second = functional_moments(f, model, n, t)
    return QuadResult(second.value - mean.value ** 2,
                      second.error + 2.0 * abs(mean.value) * mean.error,
                      mean.converged and second.converged,
                      mean.evaluations + second.evaluations)


def first_order_mean(f, model, n, t):
    """
    E n^{Hd} int_0^t f(n^H B(s)) ds for a Gaussian mixture f; tends to
    (int f) E L_t(0) = (int f) (2 pi)^(-d/2) t^(1-Hd) / (1-Hd).
    """
    weights, sigmas = _mixture_of(f, model)
    horizon = _scaled_horizon(n, t)
    fine, count = _mean_integral(weights, sigmas, model, horizon,
                                 *FINITE_N_RULE)
    coarse, extra = _mean_integral(weights, sigmas, model, horizon,
                                   *FINITE_N_RULE_COARSE)
    return compare_rules(fine, coarse, count + extra) \
        .scaled(float(n) ** (model.hd - 1.0))


#
# phase integral
#
def _abs_sin_density(c, z):
    return abs(math.sin(c * z)) * math.exp(-0.5 * z * z)


def expected_abs_phase(a):
    """E|exp(i a Z) - 1| = 2 E|sin(a Z / 2)| for a standard normal Z."""
    c = 0.5 * abs(a)
    if c == 0.0:
        return 0.0
    if c >= SERIES_SWITCH:
        # |sin x| = 2/pi - 4/pi sum cos(2kx)/(4k^2 - 1)
        k = np.arange(1, SERIES_TERMS + 1, dtype=np.float64)
        series = np.sum(np.exp(-2.0 * k * k * c * c) / (4.0 * k * k - 1.0))
        return 2.0 * (2.0 / np.pi - 4.0 / np.pi * series)
    kinks = []
    k = 1
    while k * np.pi / c < GAUSS_CUTOFF:
        kinks.append(k * np.pi / c)
        k += 1
    half = adaptive(functools.partial(_abs_sin_density, c), 0.0, GAUSS_CUTOFF,
                    epsabs=1e-13, epsrel=1e-12, points=kinks or None,
                    label='E|sin|')
    return 4.0 * half.value / math.sqrt(2.0 * np.pi)


def _phase_integrand(hd, H, scale, u):
    return u ** -hd * expected_abs_phase(scale / u ** H)


def phase_factorisation_probe(model, n, y, sigma=1.0, tol=1e-6):
    """
    Evaluates int_0^inf u^-Hd E|exp(i y.X/(n^H u^H)) - 1| du for X with
    covariance sigma^2 I twice: directly, and as n^{Hd-1} |y|^{1/H-d} Phi
    with Phi free of n and y. Returns (direct, factorized) and raises
    PyFbmCltVerificationException when they differ by more than tol.
    """
    H, hd, d = model.H, model.hd, model.d
    if H * (d + 1) <= 1.0:
        raise PyFbmCltRegimeException(
            "the phase integral requires H(d+1) > 1, got H=%r d=%d"
            % (H, d), [])
    if not n > 0:
        raise PyFbmCltDomainException("n must be positive, got %r" % n, [])
    y_norm = float(np.linalg.norm(np.atleast_1d(np.asarray(y, dtype=float))))
    if y_norm == 0.0:
        raise PyFbmCltDomainException(
            "the phase integral needs y != 0", [])

    direct = power_law_integral(
        functools.partial(_phase_integrand, hd, H,
                          sigma * y_norm / n ** H),
        alpha=-hd, gamma=hd + H, pivot=1.0, epsabs=1e-12, epsrel=1e-10,
        label='phase(n=%r,|y|=%r)' % (n, y_norm))
    phi = power_law_integral(
        functools.partial(_phase_integrand, hd, H, sigma),
        alpha=-hd, gamma=hd + H, pivot=1.0, epsabs=1e-12, epsrel=1e-10,
        label='phase Phi')
    factorized = phi.scaled(n ** (hd - 1.0) * y_norm ** (1.0 / H - d))

    gap = abs(direct.value - factorized.value) / abs(factorized.value)
    if gap > tol:
        raise PyFbmCltVerificationException(
            "phase integral does not factorise for n=%r |y|=%r" % (n, y_norm),
            [('gap', "relative gap %.3g > %.3g" % (gap, tol))])
    return direct, factorized
