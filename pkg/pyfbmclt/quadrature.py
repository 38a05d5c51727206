"""
Quadrature building blocks shared by the constant, norm and moment modules.

Adaptive one dimensional work goes through QUADPACK (scipy.integrate.quad);
smooth bounded multi dimensional integrands use tensor Gauss rules from
numpy/scipy. Integrable power-law singularities are removed by explicit
substitutions before any rule is applied.
"""
__author__ = 'pyfbmclt developers'

import math

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate
from scipy.special import roots_jacobi

from .constants import QUAD_EPSABS, QUAD_EPSREL, QUAD_LIMIT
from .exceptions import PyFbmCltDomainException, PyFbmCltQuadratureException
from .types import QuadResult
from .utils import dlog, is_debug_verbose

# QUADPACK flags roundoff trouble even when the estimate is already tiny;
# such results are accepted up to this multiple of the requested tolerance
ACCEPT_ERROR_FACTOR = 1e3
TAIL_LOG_FLOOR = -340.0


def adaptive(func, a, b, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL,
             points=None, weight=None, wvar=None, strict=True, label=None):
    """
    scipy.integrate.quad wrapped into a QuadResult.

    Raises PyFbmCltQuadratureException (carrying the last error estimate)
    when QUADPACK reports a failure and the estimate is not acceptable.
    """
    kwargs = dict(epsabs=epsabs, epsrel=epsrel, limit=QUAD_LIMIT,
                  full_output=1)
    if points is not None:
        points = sorted(p for p in points if a < p < b)
        if points:
            kwargs['points'] = points
    if weight is not None:
        kwargs['weight'] = weight
        kwargs['wvar'] = wvar

    out = integrate.quad(func, a, b, **kwargs)
    value, error, info = out[0], out[1], out[2]
    evaluations = info.get('neval', 0) if isinstance(info, dict) else 0

    converged = len(out) == 3
    if not converged:
        tolerance = max(epsabs, epsrel * abs(value))
        converged = error <= ACCEPT_ERROR_FACTOR * tolerance
        dlog("quad %s on [%r, %r]: %s (error %.3g)",
             label or getattr(func, '__name__', 'f'), a, b, out[3], error)
    if is_debug_verbose():
        dlog("quad %s = %.15g +- %.3g (%d evaluations)",
             label or getattr(func, '__name__', 'f'), value, error,
             evaluations)

    if not np.isfinite(value) or (strict and not converged):
        raise PyFbmCltQuadratureException(
            "quadrature of %s did not converge on [%r, %r]"
            % (label or getattr(func, '__name__', 'f'), a, b), error,
            [('quadpack', out[3] if len(out) > 3 else 'non finite value')])

    return QuadResult(value, error, converged, evaluations)


def power_law_integral(func, alpha, gamma, pivot=1.0, epsabs=QUAD_EPSABS,
                       epsrel=QUAD_EPSREL, label=None):
    """
    int_0^inf func(u) du for an integrand behaving like u^alpha at 0
    (alpha > -1) and like u^-gamma at infinity (gamma > 1).

    The head (0, pivot] is mapped by u = pivot*s^(1/(1+alpha)), the tail by
    u = pivot/t with t = s^(1/(gamma-1)); both transformed integrands are
    bounded on (0, 1].
    """
    if not alpha > -1.0:
        raise PyFbmCltDomainException(
            "power law at 0 is not integrable (alpha=%r)" % alpha, [])
    if not gamma > 1.0:
        raise PyFbmCltDomainException(
            "power law at infinity is not integrable (gamma=%r)" % gamma, [])

    head_power = 1.0 / (1.0 + alpha)
    tail_power = 1.0 / (gamma - 1.0)

    def head(s):
        u = pivot * s ** head_power
        if u == 0.0:
            return 0.0
        return func(u) * pivot * head_power * s ** (head_power - 1.0)

    def tail(s):
        log_t = tail_power * math.log(s)
        # 1/t^2 overflows below this
        if log_t < TAIL_LOG_FLOOR:
            return 0.0
        t = math.exp(log_t)
        return func(pivot / t) * pivot / (t * t) \
            * tail_power * s ** (tail_power - 1.0)

    name = label or getattr(func, '__name__', 'f')
    lower = adaptive(head, 0.0, 1.0, epsabs, epsrel, label=name + ':head')
    upper = adaptive(tail, 0.0, 1.0, epsabs, epsrel, label=name + ':tail')
    return lower + upper


def gauss_legendre(a, b, order):
    x, w = leggauss(order)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def gauss_legendre_panels(a, b, panels, order):
    """Composite Gauss-Legendre rule with equal panels on [a, b]."""
    edges = np.linspace(a, b, panels + 1)
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        x, w = gauss_legendre(lo, hi, order)
        nodes.append(x)
        weights.append(w)
    return np.concatenate(nodes), np.concatenate(weights)


def gauss_jacobi(a, b, order, exponent):
    """
    Nodes and weights for int_a^b (x - a)^exponent g(x) dx.
    """
    t, w = roots_jacobi(order, 0.0, exponent)
    half = 0.5 * (b - a)
    return a + half * (t + 1.0), w * half ** (exponent + 1.0)


def tensor_rule(rules):
    """
    Cartesian product of one dimensional (nodes, weights) pairs.
    Returns points of shape (N, k) and weights of shape (N,).
    """
    grids = np.meshgrid(*[r[0] for r in rules], indexing='ij')
    wgrids = np.meshgrid(*[r[1] for r in rules], indexing='ij')
    points = np.stack([g.ravel() for g in grids], axis=-1)
    weights = np.prod(np.stack([g.ravel() for g in wgrids], axis=-1), axis=-1)
    return points, weights


def compare_rules(fine, coarse, evaluations):
    """QuadResult from a fine rule checked against a coarser one."""
    return QuadResult(fine, abs(fine - coarse), True, evaluations)
