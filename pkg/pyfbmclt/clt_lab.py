"""
Monte Carlo side of the limit theorem.

    F_n(t) = n^{(1+Hd)/2} int_0^t f(n^H B(s)) ds
           =law n^{(Hd-1)/2} int_0^{nt} f(B(s)) ds
           --> sqrt(C_{H,d}) ||f||_beta W(L_t(0))

Samplers draw one value per seed and are combined into SampleSets by
ensemble.run_ensemble; every sampler is a module level function so that
partial applications of it can be shipped to worker processes.
"""
__author__ = 'pyfbmclt developers'

import functools
import math

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid
from scipy.stats import ks_2samp

from .constants import DOUBLING_REPETITIONS, EVEN_MOMENT_BAND, GRID_FACTOR, KERNEL_WIDTH_FACTOR, \
    KS_MIN_PVALUE, ODD_MOMENT_SE, SCALING_WIDTHS, SLOPE_SLACK, \
    TAG_FIRST_ORDER, TAG_FUNCTIONAL, TAG_FUNCTIONAL_DIRECT, TAG_LIMIT_LAW, \
    TAG_LOCAL_TIME, VARIANCE_RATIO_BAND, ZERO_INTEGRAL_TOL
from .ensemble import run_ensemble
from .exceptions import PyFbmCltDomainException, \
    PyFbmCltPreconditionException
from .fbm import generate_path
from .functions import norm_direct, norm_fourier
from .gaussian_analysis import functional_variance, interval_moment, \
    local_time_moments
from .limit_constant import c_closed
from .types import SampleSet, TimeConfig
from .utils import derive_seed, dlog, need_theorem_regime

# index of the independent stream used for limit law draws
LIMIT_STREAM = 2 ** 32

# exponents over ([0, t/2], [t/2, t]); odd total order only
ODD_INDICES = ((1, 0), (0, 1), (3, 0), (0, 3), (2, 1), (1, 2))
EVEN_INDICES = ((2, 0), (0, 2), (2, 2), (4, 0), (0, 4))

FINITE_N_NOTE = (
    "F_n(t) has the mixed normal law only in the limit n -> infinity; "
    "finite_n.exact_to_limit is the deterministic variance bias at this n")


def _require_resolution(n, grid_size):
    required = int(math.ceil(GRID_FACTOR * n))
    if grid_size < required:
        raise PyFbmCltPreconditionException(
            "grid_size must be at least %d (%d n) for n=%r, got %d"
            % (required, GRID_FACTOR, n, grid_size), [])


def _require_dimension(f, model):
    if f.dim != model.d:
        raise PyFbmCltDomainException(
            "%s lives in d=%d but the model has d=%d"
            % (f.label, f.dim, model.d), [])


def _meta(f, model, n, t, grid_size, seed, paths, **extra):
    meta = model.as_dict()
    meta.update({'f': f.label if f is not None else None, 'n': n, 't': t,
                 'grid_size': grid_size, 'seed': seed, 'paths': paths})
    meta.update(extra)
    return meta


def _values(sample):
    values = getattr(sample, 'values', sample)
    return np.asarray(values, dtype=np.float64).ravel()


#
# functional
#
def functional_path(f, path, n):
    """F_n on the grid of ``path`` (trapezoid rule, cumulative)."""
    model = path.model
    scaled = f(path.points() * n ** model.H)
    integral = cumulative_trapezoid(scaled, dx=path.spacing, initial=0.0)
    return n ** (0.5 * (1.0 + model.hd)) * integral


@need_theorem_regime
def functional_sample(f, model, n, t, M, seed):
    _require_dimension(f, model)
    _require_resolution(n, M)
    return float(functional_path(f, generate_path(model, t, M, seed), n)[-1])


@need_theorem_regime
def functional_direct_sample(f, model, n, t, M, seed):
    """n^{(Hd-1)/2} int_0^{nt} f(B(s)) ds on a path of horizon n t."""
    _require_dimension(f, model)
    _require_resolution(n, M)
    path = generate_path(model, n * t, M, seed)
    integral = trapezoid(f(path.points()), dx=path.spacing)
    return float(n ** (0.5 * (model.hd - 1.0)) * integral)


def first_order_sample(f, model, n, t, M, seed):
    """n^{Hd} int_0^t f(n^H B(s)) ds; tends to (int f) L_t(0)."""
    _require_dimension(f, model)
    if abs(f.integral) <= ZERO_INTEGRAL_TOL:
        raise PyFbmCltDomainException(
            "first order sampling needs int f != 0 (%s)" % f.label, [])
    _require_resolution(n, M)
    path = generate_path(model, t, M, seed)
    integral = trapezoid(f(path.points() * n ** model.H), dx=path.spacing)
    return float(n ** model.hd * integral)


def _collect(tag, task, seed, paths, workers, meta):
    values = run_ensemble(task, seed, paths, workers)
    sample = SampleSet(values, tag, meta)
    dlog("%s: %d draws, mean %.6g variance %.6g", tag, len(sample),
         sample.mean(), sample.variance() if len(sample) > 1 else 0.0)
    return sample


def functional_set(f, model, n, t, M, paths, seed, workers=1):
    model.require_theorem_regime()
    _require_resolution(n, M)
    task = functools.partial(functional_sample, f, model, n, t, M)
    return _collect(TAG_FUNCTIONAL, task, seed, paths, workers,
                    _meta(f, model, n, t, M, seed, paths))


def functional_direct_set(f, model, n, t, M, paths, seed, workers=1):
    model.require_theorem_regime()
    _require_resolution(n, M)
    task = functools.partial(functional_direct_sample, f, model, n, t, M)
    return _collect(TAG_FUNCTIONAL_DIRECT, task, seed, paths, workers,
                    _meta(f, model, n, t, M, seed, paths))


def first_order_set(f, model, n, t, M, paths, seed, workers=1):
    task = functools.partial(first_order_sample, f, model, n, t, M)
    return _collect(TAG_FIRST_ORDER, task, seed, paths, workers,
                    _meta(f, model, n, t, M, seed, paths))


#
# local time
#
def default_epsilon(model, t, M, halvings=0):
    """Smallest kernel width such that every level of the ladder is resolved."""
    return KERNEL_WIDTH_FACTOR * (t / M) ** model.H * 2 ** halvings


def local_time_estimate(path, epsilon, level=0.0):
    """int_0^T phi_eps(B(s) - x) ds with a Gaussian kernel of width eps."""
    floor = path.spacing ** path.model.H
    if epsilon < floor:
        raise PyFbmCltPreconditionException(
            "epsilon must be at least the grid resolution %.6g, got %r"
            % (floor, epsilon), [])
    d = path.model.d
    shifted = path.points() - np.broadcast_to(np.asarray(level, float), (d,))
    kernel = (2.0 * np.pi * epsilon * epsilon) ** (-0.5 * d) \
        * np.exp(-np.sum(shifted * shifted, axis=1) / (2.0 * epsilon ** 2))
    return float(trapezoid(kernel, dx=path.spacing))


def local_time_ladder(path, epsilon, halvings):
    """Estimates at epsilon, epsilon/2, ..., epsilon/2^halvings."""
    return np.array([local_time_estimate(path, epsilon / 2 ** j)
                     for j in range(halvings + 1)])


def richardson_local_time(values, model):
    """
    Removes the leading epsilon^{(1-Hd)/H} bias from consecutive pairs of
    a halving ladder (last axis); returns one value per pair.
    """
    values = np.asarray(values, dtype=np.float64)
    q = 2.0 ** ((1.0 - model.hd) / model.H)
    return (q * values[..., 1:] - values[..., :-1]) / (q - 1.0)


def _ladder_task(model, t, M, epsilon, halvings, seed):
    return local_time_ladder(generate_path(model, t, M, seed), epsilon,
                             halvings)


def _mean_and_stderr(values):
    values = np.asarray(values, dtype=np.float64)
    return float(values.mean()), \
        float(values.std(ddof=1) / math.sqrt(values.size))


def local_time_study(model, t, M, paths, seed, epsilon=None, halvings=2,
                     workers=1):
    """
    Kernel estimates of L_t(0) at epsilon / 2^j against the exact first and
    second moments, raw and extrapolated.
    """
    if epsilon is None:
        epsilon = default_epsilon(model, t, M, halvings)
    task = functools.partial(_ladder_task, model, t, M, epsilon, halvings)
    ladders = run_ensemble(task, seed, paths, workers)

    mean_oracle, second_oracle = local_time_moments(model, t)
    levels = []
    for j in range(halvings + 1):
        mean, stderr = _mean_and_stderr(ladders[:, j])
        levels.append({'epsilon': epsilon / 2 ** j, 'mean': mean,
                       'stderr': stderr,
                       'bias': mean - mean_oracle.value,
                       'relative_bias': (mean - mean_oracle.value)
                       / mean_oracle.value})
    biases = [abs(level['bias']) for level in levels]

    mean, mean_se = _mean_and_stderr(richardson_local_time(ladders, model)[:, -1])
    second, second_se = _mean_and_stderr(
        richardson_local_time(ladders ** 2, model)[:, -1])
    return {
        'paths': paths, 'seed': seed, 'grid_size': M, 't': t,
        'levels': levels,
        'bias_shrinks': all(a > b for a, b in zip(biases, biases[1:])),
        'oracle_mean': mean_oracle.value,
        'oracle_second_moment': second_oracle.value,
        'extrapolated_mean': mean, 'extrapolated_mean_stderr': mean_se,
        'mean_z': (mean - mean_oracle.value) / mean_se,
        'extrapolated_second_moment': second,
        'extrapolated_second_moment_stderr': second_se,
        'second_moment_z': (second - second_oracle.value) / second_se,
        'sample': SampleSet(ladders[:, -1], TAG_LOCAL_TIME,
                            _meta(None, model, 1, t, M, seed, paths,
                                  epsilon=epsilon / 2 ** halvings)),
    }


@need_theorem_regime
def limit_law_sample(f, model, t, M, seed, constant, norm, epsilon=None):
    """
    sqrt(C) ||f|| sqrt(L) Z with L the extrapolated kernel local time
    (one halving, clipped at 0) and Z from a child stream of ``seed``.
    """
    _require_dimension(f, model)
    if epsilon is None:
        epsilon = default_epsilon(model, t, M, 1)
    path = generate_path(model, t, M, seed)
    local = max(float(richardson_local_time(
        local_time_ladder(path, epsilon, 1), model)[-1]), 0.0)
    child = np.random.SeedSequence(seed).spawn(1)[0]
    z = np.random.default_rng(child).standard_normal()
    return math.sqrt(constant) * norm * math.sqrt(local) * z


def limit_law_set(f, model, t, M, paths, seed, constant, norm, epsilon=None,
                  workers=1):
    model.require_theorem_regime()
    task = functools.partial(limit_law_sample, f, model, t, M,
                             constant=constant, norm=norm, epsilon=epsilon)
    return _collect(TAG_LIMIT_LAW, task, seed, paths, workers,
                    _meta(f, model, None, t, M, seed, paths,
                          constant=constant, norm=norm, epsilon=epsilon))


#
# checks
#
def ks_two_sample(a, b):
    """(statistic, p value) of the two sample Kolmogorov-Smirnov test."""
    a, b = _values(a), _values(b)
    if a.size == 0 or b.size == 0:
        raise PyFbmCltDomainException(
            "KS test needs two nonempty samples, got %d and %d"
            % (a.size, b.size), [])
    result = ks_2samp(a, b, method='asymp')
    return float(result.statistic), float(result.pvalue)


def _increment_task(f, model, n, t, M, antithetic, seed):
    path = generate_path(model, t, M, seed)
    half = M // 2
    walks = [functional_path(f, path, n)]
    if antithetic:
        walks.append(functional_path(f, path.reflected(), n))
    out = []
    for walk in walks:
        out.extend([walk[half], walk[-1] - walk[half]])
    return out


def odd_moment_check(f, model, n, t, M, paths, seed, antithetic=False,
                     workers=1):
    """
    Mixed moments of F_n over [0, t/2] and [t/2, t] with an odd exponent
    must vanish: |estimate| < 4 standard errors.
    """
    model.require_theorem_regime()
    _require_dimension(f, model)
    _require_resolution(n, M)
    task = functools.partial(_increment_task, f, model, n, t, M,
                             bool(antithetic))
    draws = run_ensemble(task, seed, paths, workers)

    rows = []
    for m1, m2 in ODD_INDICES:
        values = draws[:, 0] ** m1 * draws[:, 1] ** m2
        if antithetic:
            values = 0.5 * (values + draws[:, 2] ** m1 * draws[:, 3] ** m2)
        estimate, stderr = _mean_and_stderr(values)
        scale = float(np.mean(np.abs(values))) if values.size else 0.0
        # exact cancellation leaves no spread to compare against
        passed = abs(estimate) < ODD_MOMENT_SE * stderr or \
            abs(estimate) <= 1e-12 * max(scale, 1e-300)
        rows.append({'m': [m1, m2], 'estimate': estimate, 'stderr': stderr,
                     'passed': bool(passed)})
    return {'paths': paths, 'seed': seed, 'antithetic': bool(antithetic),
            'rows': rows, 'passed': all(row['passed'] for row in rows)}


def _limit_config(model, intervals, exponents):
    pairs = [(interval, m) for interval, m in zip(intervals, exponents) if m]
    return TimeConfig([interval for interval, _ in pairs],
                      [m for _, m in pairs], model)


def even_moment_check(f, model, n, t, M, paths, seed, workers=1):
    """
    Joint even moments of F_n over [0, t/2] and [t/2, t] against their
    limits (C ||f||^2)^{|m|/2} E prod (W(L_b(0)) - W(L_a(0)))^{m_i}.

    A row passes when the gap stays below ODD_MOMENT_SE standard errors
    plus EVEN_MOMENT_BAND times the limit; the band absorbs the finite-n
    bias, which has no known rate.
    """
    model.require_theorem_regime()
    _require_dimension(f, model)
    _require_resolution(n, M)
    scale = c_closed(model) * _squared_norm(f, model.beta)
    task = functools.partial(_increment_task, f, model, n, t, M, False)
    draws = run_ensemble(task, seed, paths, workers)

    intervals = [(0.0, 0.5 * t), (0.5 * t, t)]
    rows = []
    for m1, m2 in EVEN_INDICES:
        values = draws[:, 0] ** m1 * draws[:, 1] ** m2
        estimate, stderr = _mean_and_stderr(values)
        moment = interval_moment(_limit_config(model, intervals, (m1, m2)))
        limit = moment.value * scale ** (0.5 * (m1 + m2))
        allowed = ODD_MOMENT_SE * stderr + EVEN_MOMENT_BAND * limit
        rows.append({'m': [m1, m2], 'estimate': estimate, 'stderr': stderr,
                     'limit': limit,
                     'ratio': estimate / limit if limit > 0.0 else None,
                     'passed': bool(abs(estimate - limit) < allowed)})
    return {'paths': paths, 'seed': seed, 'n': n, 'rows': rows,
            'passed': all(row['passed'] for row in rows)}


def _marks_task(f, model, n, M, marks, seed):
    walk = functional_path(f, generate_path(model, 1.0, M, seed), n)
    return [walk[int(round(mark * M))] for mark in marks]


def increment_moment_scaling(f, model, n, M, paths, m, seed,
                             widths=SCALING_WIDTHS, offset=0.5,
                             reference=0.25, workers=1):
    """
    Slope of log E F_n(h)^{2m} against log h on [0, 1]; the limit predicts
    m(1 - Hd). Also reports the variance of F_n over [offset, offset +
    reference] relative to [0, reference] next to its predicted value
    ((a+h)^{1-Hd} - a^{1-Hd}) / h^{1-Hd}.
    """
    model.require_theorem_regime()
    _require_dimension(f, model)
    _require_resolution(n, M)
    marks = sorted(set(list(widths) + [offset, offset + reference,
                                       reference]))
    for mark in marks:
        if mark > 1.0 or abs(mark * M - round(mark * M)) > 1e-9:
            raise PyFbmCltPreconditionException(
                "time %r is not a grid point of M=%d on [0, 1]" % (mark, M),
                [])
    task = functools.partial(_marks_task, f, model, n, M, tuple(marks))
    draws = run_ensemble(task, seed, paths, workers)
    column = dict((mark, draws[:, i]) for i, mark in enumerate(marks))

    moments = [float(np.mean(column[h] ** (2 * m))) for h in widths]
    slope = float(np.polyfit(np.log(widths), np.log(moments), 1)[0])
    rho = 1.0 - model.hd
    predicted = m * rho

    base = float(np.mean(column[reference] ** 2))
    shifted = float(np.mean((column[offset + reference]
                             - column[offset]) ** 2))
    return {
        'm': m, 'widths': list(widths), 'moments': moments,
        'slope': slope, 'predicted_slope': predicted,
        'passed': slope >= predicted - SLOPE_SLACK,
        'offset': offset, 'reference': reference,
        'variance_ratio': shifted / base,
        'predicted_variance_ratio': ((offset + reference) ** rho
                                     - offset ** rho) / reference ** rho,
    }


def _squared_norm(f, beta):
    if f.has_fourier():
        return norm_fourier(f, beta).value
    return norm_direct(f, beta).value


def clt_acceptance(f, model, t, n, M, paths, seed, workers=1, epsilon=None):
    """
    F_n(t) against draws of the limit law. Returns (report, sample sets).
    """
    model.require_theorem_regime()
    _require_dimension(f, model)
    constant = c_closed(model)
    norm_squared = _squared_norm(f, model.beta)
    if norm_squared <= 0.0:
        raise PyFbmCltDomainException(
            "%s has zero H_0^beta norm, the limit is degenerate" % f.label,
            [])

    functional = functional_set(f, model, n, t, M, paths, seed, workers)
    limit = limit_law_set(f, model, t, M, paths,
                          derive_seed(seed, LIMIT_STREAM), constant,
                          math.sqrt(norm_squared), epsilon, workers)

    mean_local, second_local = local_time_moments(model, t)
    variance = constant * norm_squared * mean_local.value
    fourth = 3.0 * (constant * norm_squared) ** 2 * second_local.value
    statistic, pvalue = ks_two_sample(functional, limit)
    ratio = functional.variance() / variance
    low, high = VARIANCE_RATIO_BAND
    finite_n = None
    if f.mixture is not None:
        exact = functional_variance(f, model, n, t).value
        finite_n = {'exact_variance': exact,
                    'variance_ratio': functional.variance() / exact,
                    'exact_to_limit': exact / variance,
                    'note': FINITE_N_NOTE}

    report = {
        'exploratory': model.exploratory(),
        'constant': constant, 'norm_squared': norm_squared,
        'predicted_variance': variance,
        'variance_ratio': ratio,
        'fourth_moment_ratio': functional.moment(4) / fourth,
        'kurtosis': functional.kurtosis(),
        'predicted_kurtosis': 3.0 * second_local.value
        / mean_local.value ** 2,
        'ks_statistic': statistic, 'ks_pvalue': pvalue,
        'finite_n': finite_n,
        'functional': functional.summary(), 'limit_law': limit.summary(),
        'checks': {
            'variance_ratio': low <= ratio <= high,
            'ks': pvalue > KS_MIN_PVALUE,
        },
    }
    if finite_n is not None:
        report['checks']['finite_n_variance'] = \
            low <= finite_n['variance_ratio'] <= high
    report['passed'] = all(report['checks'].values())
    return report, [functional, limit]


def n_doubling_diagnostic(f, model, t, n_low, n_high, M, paths, seed,
                          repetitions=DOUBLING_REPETITIONS, workers=1,
                          epsilon=None):
    """
    Counts repetitions in which the KS distance to the limit law does not
    grow when n goes from n_low to n_high; passes on a strict majority.
    """
    model.require_theorem_regime()
    _require_resolution(n_high, M)
    constant = c_closed(model)
    norm = math.sqrt(_squared_norm(f, model.beta))
    rows = []
    for repetition in range(repetitions):
        base = derive_seed(seed, repetition)
        limit = limit_law_set(f, model, t, M, paths,
                              derive_seed(base, LIMIT_STREAM), constant, norm,
                              epsilon, workers)
        low = functional_set(f, model, n_low, t, M, paths,
                             derive_seed(base, 1), workers)
        high = functional_set(f, model, n_high, t, M, paths,
                              derive_seed(base, 2), workers)
        rows.append({'ks_low': ks_two_sample(low, limit)[0],
                     'ks_high': ks_two_sample(high, limit)[0]})
    improved = sum(1 for row in rows if row['ks_high'] <= row['ks_low'])
    required = repetitions // 2 + 1
    return {'n_low': n_low, 'n_high': n_high, 'repetitions': repetitions,
            'improved': improved, 'required': required,
            'passed': improved >= required, 'rows': rows}
