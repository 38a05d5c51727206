"""
The limit constant C_{H,d} of the normalised additive functional.

    C_{H,d} = 2/(2 pi)^{d/2} int_0^inf w^{-Hd} (1 - exp(-1/(2 w^{2H}))) dw

is finite exactly when H > 1/(d+2); ``c_closed`` is its Gamma function form.
"""
__author__ = 'pyfbmclt developers'

import math

import numpy as np
from scipy.special import gamma

from .exceptions import PyFbmCltDomainException, \
    PyFbmCltVerificationException
from .quadrature import power_law_integral
from .types import HurstModel
from .utils import dlog, need_constant_regime


def _constant_integrand(model):
    hd = model.hd
    two_h = 2.0 * model.H

    def integrand(w):
        return w ** -hd * -math.expm1(-0.5 / w ** two_h)

    return integrand


@need_constant_regime
def c_integral(model, tol=1e-10):
    """C_{H,d} by quadrature of its defining integral."""
    # w^-Hd at 0, w^-(Hd+2H)/2 at infinity
    result = power_law_integral(_constant_integrand(model),
                                alpha=-model.hd, gamma=model.hd + 2 * model.H,
                                pivot=1.0, epsabs=tol,
                                label='C(H=%r,d=%d)' % (model.H, model.d))
    return result.scaled(2.0 / (2.0 * np.pi) ** (model.d / 2.0))


def c_closed(model):
    H, d = model.H, model.d
    argument = (H * d + 2.0 * H - 1.0) / (2.0 * H)
    if argument <= 0.0:
        raise PyFbmCltDomainException(
            "C_{H,d} diverges for H <= 1/(d+2), got H=%r d=%d" % (H, d),
            [('gamma', "Gamma argument %r is not positive" % argument)])
    return 2.0 ** (1.0 - 1.0 / (2.0 * H)) * gamma(argument) \
        / ((1.0 - H * d) * np.pi ** (d / 2.0))


def hurst_grid(start=0.30, stop=0.90, step=0.05):
    """start, start + step, ..., stop; values rounded to 10 decimals."""
    count = int(round((stop - start) / step)) + 1
    return [round(start + i * step, 10) for i in range(count)]


def verify_constant(model, tol=1e-8):
    """
    |c_integral - c_closed|; raises PyFbmCltVerificationException when it
    reaches tol * c_closed.
    """
    closed = c_closed(model)
    numeric = c_integral(model, tol=min(1e-10, tol * 1e-2))
    residual = abs(numeric.value - closed)
    dlog("C(H=%r,d=%d): integral %.15g closed %.15g residual %.3g",
         model.H, model.d, numeric.value, closed, residual)
    if residual >= tol * closed:
        raise PyFbmCltVerificationException(
            "constant identity failed for H=%r d=%d" % (model.H, model.d),
            [('residual', "relative residual %.3g >= %.3g"
              % (residual / closed, tol))])
    return residual


def constant_grid(H_values, d_values, tol=1e-8):
    """
    One row per (H, d) with 1/(d+2) < H < 1/d; other pairs are skipped.
    A row passes when the relative residual is below tol.
    """
    rows = []
    for d in d_values:
        for H in H_values:
            if not 1.0 / (d + 2) < H < 1.0 / d:
                continue
            model = HurstModel(H, d)
            numeric = c_integral(model)
            closed = c_closed(model)
            residual = abs(numeric.value - closed)
            rows.append({
                'H': H, 'd': d,
                'c_integral': numeric.value,
                'c_integral_error': numeric.error,
                'c_closed': closed,
                'relative_residual': residual / closed,
                'passed': residual < tol * closed,
            })
    return rows
