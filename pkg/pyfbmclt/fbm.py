"""
Exact simulation of d-dimensional fractional Brownian motion.

Increments are fractional Gaussian noise drawn by circulant embedding of
the fGn autocovariance (Davies-Harte); the path is their cumulative sum.
The embedding is exact in distribution and costs O(M log M) per component.
"""
__author__ = 'pyfbmclt developers'

import functools

import numpy as np
from scipy.stats import ks_2samp

from .constants import EIGEN_CLIP_RATIO, MAX_EMBEDDING_DOUBLINGS
from .exceptions import PyFbmCltDomainException, \
    PyFbmCltGenerationException, PyFbmCltPreconditionException
from .types import FbmPath
from .utils import derive_seed, dlog, is_debug_verbose, require_power_of_two


def covariance(model, s, t):
    """
    E B^i(s) B^i(t) = (t^2H + s^2H - |t - s|^2H) / 2 for one component.
    Works elementwise on arrays.
    """
    s = np.asarray(s, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    if np.any(s < 0) or np.any(t < 0):
        raise PyFbmCltDomainException(
            "covariance is defined for nonnegative times only", [])
    two_h = 2.0 * model.H
    value = 0.5 * (t ** two_h + s ** two_h - np.abs(t - s) ** two_h)
    if value.ndim == 0:
        return float(value)
    return value


def fgn_autocovariance(H, k, delta=1.0):
    """gamma(k) of the increments B((j+k)delta) - B((j+k-1)delta)."""
    k = np.abs(np.asarray(k, dtype=np.float64))
    two_h = 2.0 * H
    return 0.5 * (np.abs(k + 1.0) ** two_h + np.abs(k - 1.0) ** two_h
                  - 2.0 * k ** two_h) * delta ** two_h


@functools.lru_cache(maxsize=64)
def circulant_eigenvalues(H, M, delta=1.0):
    """
    Eigenvalues of the 2m x 2m circulant embedding of the M x M fGn
    covariance, m >= M. Returns (eigenvalues[0..m], m), read-only.

    Tiny negative eigenvalues (rounding) are clipped; a genuinely
    indefinite embedding is retried with m doubled.
    """
    m = int(M)
    minimum = None
    for attempt in range(MAX_EMBEDDING_DOUBLINGS + 1):
        gamma = fgn_autocovariance(H, np.arange(m + 1), delta)
        row = np.concatenate([gamma, gamma[-2:0:-1]])
        eigenvalues = np.fft.rfft(row).real
        minimum = float(eigenvalues.min())
        if minimum >= -EIGEN_CLIP_RATIO * float(eigenvalues.max()):
            eigenvalues = np.maximum(eigenvalues, 0.0)
            eigenvalues.flags.writeable = False
            if attempt:
                dlog("circulant embedding for H=%r M=%d needed m=%d",
                     H, M, m)
            return eigenvalues, m
        dlog("negative circulant eigenvalue %.3g for H=%r m=%d, doubling",
             minimum, H, m)
        m *= 2

    raise PyFbmCltGenerationException(
        "circulant embedding is not nonnegative definite for H=%r M=%d "
        "after %d doublings" % (H, M, MAX_EMBEDDING_DOUBLINGS), minimum,
        [('min_eigenvalue', "minimal eigenvalue %.6g" % minimum)])


def _new_seed():
    return int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])


def fgn_increments(model, M, delta, seed):
    """
    M exact fractional Gaussian noise increments with spacing ``delta`` for
    each of the d independent components; returns a (d, M) array.
    """
    if int(M) != M or M < 1:
        raise PyFbmCltDomainException(
            "number of increments must be >= 1, got %r" % (M,), [])
    if not delta > 0:
        raise PyFbmCltDomainException(
            "increment spacing must be positive, got %r" % (delta,), [])
    M = int(M)

    eigenvalues, m = circulant_eigenvalues(model.H, M, float(delta))
    n = 2 * m
    rng = np.random.default_rng(seed)
    draws = rng.standard_normal((model.d, n))

    spectrum = np.empty((model.d, m + 1), dtype=np.complex128)
    spectrum[:, 0] = draws[:, 0]
    spectrum[:, m] = draws[:, 1]
    spectrum[:, 1:m] = (draws[:, 2:m + 1] + 1j * draws[:, m + 1:]) \
        / np.sqrt(2.0)
    # irfft divides by n
    spectrum *= np.sqrt(eigenvalues * n)

    return np.fft.irfft(spectrum, n=n, axis=1)[:, :M]


def generate_path(model, horizon, grid_size, seed=None):
    """
    One fBm path on the uniform grid k*T/M, k = 0..M. M must be a power
    of two.
    """
    require_power_of_two(grid_size)
    if not horizon > 0:
        raise PyFbmCltPreconditionException(
            "horizon must be positive, got %r" % (horizon,), [])
    if seed is None:
        seed = _new_seed()

    increments = fgn_increments(model, grid_size, horizon / grid_size, seed)
    values = np.zeros((model.d, grid_size + 1))
    np.cumsum(increments, axis=1, out=values[:, 1:])
    if is_debug_verbose():
        dlog("path %r seed=%s", model, seed)
    return FbmPath(model, horizon, grid_size, values, seed)


def generate_paths(model, horizon, grid_size, master_seed, count, start=0):
    """Paths start..start+count-1 of the ensemble keyed by master_seed."""
    for index in range(start, start + count):
        yield generate_path(model, horizon, grid_size,
                            derive_seed(master_seed, index))


def path_matrix(model, horizon, grid_size, master_seed, count, component=0):
    """(count, M + 1) array of one component of an ensemble."""
    out = np.empty((count, grid_size + 1))
    for row, path in enumerate(generate_paths(model, horizon, grid_size,
                                              master_seed, count)):
        out[row] = path.values[component]
    return out


def sample_covariance_table(samples):
    """
    Sample covariance of centred columns and the standard error of every
    entry: samples has shape (N, k) and zero mean by construction.
    """
    samples = np.asarray(samples, dtype=np.float64)
    count = samples.shape[0]
    if count < 2:
        raise PyFbmCltDomainException(
            "a covariance table needs at least two samples", [])
    products = samples[:, :, None] * samples[:, None, :]
    table = products.mean(axis=0)
    stderr = products.std(axis=0, ddof=1) / np.sqrt(count)
    return table, stderr


def covariance_matrix(model, times):
    times = np.asarray(times, dtype=np.float64)
    return covariance(model, times[:, None], times[None, :])


def exactness_check(model, grid_size, count, master_seed, horizon=1.0,
                    max_se=4.0):
    """
    Sample covariance of B(t_1..t_M), first component, against the exact
    covariance; every entry must lie within ``max_se`` standard errors.
    """
    samples = path_matrix(model, horizon, grid_size, master_seed, count)[:, 1:]
    table, stderr = sample_covariance_table(samples)
    times = np.linspace(0.0, horizon, grid_size + 1)[1:]
    exact = covariance_matrix(model, times)
    upper = np.triu_indices(grid_size)
    z = np.abs(table - exact)[upper] / stderr[upper]
    return {'H': model.H, 'grid_size': grid_size, 'paths': count,
            'max_z': float(z.max()), 'passed': bool(z.max() < max_se)}


def stationarity_check(model, grid_size, count, master_seed, offsets=None,
                       alpha=0.01):
    """
    KS comparison of the increment at grid offset 0 with the increments at
    later offsets; fGn is stationary, so every p value should exceed alpha.
    """
    if offsets is None:
        offsets = (grid_size // 4, grid_size // 2, grid_size - 1)
    increments = np.diff(path_matrix(model, 1.0, grid_size, master_seed,
                                     count), axis=1)
    rows = []
    for offset in offsets:
        result = ks_2samp(increments[:, 0], increments[:, offset],
                          method='asymp')
        rows.append({'offset': int(offset),
                     'statistic': float(result.statistic),
                     'pvalue': float(result.pvalue)})
    return {'H': model.H, 'grid_size': grid_size, 'paths': count,
            'rows': rows,
            'passed': all(row['pvalue'] > alpha for row in rows)}
