__author__ = 'pyfbmclt developers'

import functools

import numpy as np

from .constants import DEFAULTS, SAMPLE_TAGS
from .exceptions import PyFbmCltDomainException, PyFbmCltRegimeException


class HurstModel(object):
    """
    The pair (H, d) of a d-dimensional fractional Brownian motion.

    Only Hd < 1 is accepted: the local time at zero does not exist otherwise.
    With ``conjecture=True`` theorem_regime() is relaxed to the range where
    the limit constant is finite, 1/(d+2) < H < 1/d.
    """
    __H = None
    __d = None
    __conjecture = False

    H = property(lambda self: self.__H)
    d = property(lambda self: self.__d)
    conjecture = property(lambda self: self.__conjecture)
    beta = property(lambda self: 1.0 / self.__H - self.__d)
    hd = property(lambda self: self.__H * self.__d)

    def __init__(self, H, d=1, conjecture=False):
        try:
            H = float(H)
        except (TypeError, ValueError):
            raise PyFbmCltDomainException(
                "Hurst index must be a number, got %r" % (H,), [])
        if not 0.0 < H < 1.0:
            raise PyFbmCltDomainException(
                "Hurst index must satisfy 0 < H < 1, got H=%r" % H, [])
        if int(d) != d or d < 1:
            raise PyFbmCltDomainException(
                "dimension must be a positive integer, got d=%r" % (d,), [])
        d = int(d)
        if H * d >= 1.0:
            raise PyFbmCltDomainException(
                "local time requires H*d < 1, got H=%r d=%d" % (H, d), [])

        self.__H = H
        self.__d = d
        self.__conjecture = bool(conjecture)

    def theorem_regime(self):
        if self.__conjecture:
            return self.constant_regime()
        return 1.0 / (self.__d + 1) < self.__H < 1.0 / self.__d

    def constant_regime(self):
        return self.__H > 1.0 / (self.__d + 2)

    def require_theorem_regime(self):
        if not self.theorem_regime():
            if self.__conjecture:
                raise PyFbmCltRegimeException(
                    "requires 1/(d+2) < H < 1/d (conjecture mode), "
                    "got H=%r d=%d" % (self.__H, self.__d), [])
            raise PyFbmCltRegimeException(
                "requires 1/(d+1) < H < 1/d, got H=%r d=%d"
                % (self.__H, self.__d), [])

    def require_constant_regime(self):
        if not self.constant_regime():
            raise PyFbmCltRegimeException(
                "requires H > 1/(d+2) (the limit constant diverges), "
                "got H=%r d=%d" % (self.__H, self.__d), [])

    def exploratory(self):
        """True when results come from the conjectured range only."""
        return self.__conjecture and not \
            (1.0 / (self.__d + 1) < self.__H < 1.0 / self.__d)

    def as_dict(self):
        return {'H': self.__H, 'd': self.__d,
                'conjecture': self.__conjecture}

    def __eq__(self, other):
        return isinstance(other, HurstModel) and \
            (self.__H, self.__d, self.__conjecture) == \
            (other.H, other.d, other.conjecture)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.__H, self.__d, self.__conjecture))

    def __repr__(self):
        return "HurstModel(H=%r, d=%d)" % (self.__H, self.__d)


class FbmPath(object):
    """
    A d-dimensional fBm trajectory sampled on the uniform grid k*T/M.
    ``values`` has shape (d, M + 1) and is read-only.
    """

    def __init__(self, model, horizon, grid_size, values, seed):
        values = np.array(values, dtype=np.float64)
        if values.shape != (model.d, grid_size + 1):
            raise PyFbmCltDomainException(
                "path values must have shape (%d, %d), got %r"
                % (model.d, grid_size + 1, values.shape), [])
        values.flags.writeable = False
        self.model = model
        self.horizon = float(horizon)
        self.grid_size = int(grid_size)
        self.values = values
        self.seed = seed

    @property
    def spacing(self):
        return self.horizon / self.grid_size

    @property
    def times(self):
        return np.linspace(0.0, self.horizon, self.grid_size + 1)

    def points(self):
        """Grid values as an (M + 1, d) array of points of R^d."""
        return self.values.T

    def component(self, i):
        return self.values[i]

    def reflected(self):
        return FbmPath(self.model, self.horizon, self.grid_size,
                       -self.values, self.seed)

    def header(self):
        return "H=%r d=%d T=%r M=%d seed=%s" % (
            self.model.H, self.model.d, self.horizon, self.grid_size,
            self.seed)

    def __repr__(self):
        return "FbmPath(%s)" % self.header()


def _scaled_evaluate(evaluate, factor, x):
    return factor * evaluate(x)


def _reflected_evaluate(evaluate, x):
    return evaluate(-np.asarray(x))


class TestFunction(object):
    """
    An element of H_0^beta (or, for first order tests, any integrable f).

    ``evaluate`` maps an (..., d) array of points to an (...) array of
    values; ``fourier`` (optional) maps an (..., d) array of frequencies to
    the transform int e^{i x.xi} f(x) dx. Both must be picklable.
    """
    __test__ = False  # keep test collectors away from the class name

    def __init__(self, dim, evaluate, fourier=None, support_radius=10.0,
                 label='f', integral=0.0, radial_fourier=False, width=1.0,
                 mixture=None):
        self.dim = int(dim)
        self.evaluate = evaluate
        self.fourier = fourier
        self.support_radius = float(support_radius)
        self.label = label
        self.integral = float(integral)
        self.radial_fourier = bool(radial_fourier)
        # smallest spatial scale on which f varies
        self.width = float(width)
        # (weights, widths) when f is a sum of centred Gaussian densities
        self.mixture = mixture

    def __call__(self, x):
        return self.evaluate(np.asarray(x, dtype=np.float64))

    def transform(self, xi):
        return self.fourier(np.asarray(xi, dtype=np.float64))

    def has_fourier(self):
        return self.fourier is not None

    def scaled(self, factor):
        fourier = None
        if self.fourier is not None:
            fourier = functools.partial(_scaled_evaluate, self.fourier, factor)
        mixture = None
        if self.mixture is not None:
            weights, sigmas = self.mixture
            mixture = (tuple(factor * w for w in weights), sigmas)
        return TestFunction(
            self.dim, functools.partial(_scaled_evaluate, self.evaluate, factor),
            fourier, self.support_radius, "%r*%s" % (factor, self.label),
            factor * self.integral, self.radial_fourier, self.width,
            mixture)

    def reflected(self):
        # F(f(-.))(xi) = Ff(-xi)
        fourier = None
        if self.fourier is not None:
            fourier = functools.partial(_reflected_evaluate, self.fourier)
        return TestFunction(
            self.dim, functools.partial(_reflected_evaluate, self.evaluate),
            fourier, self.support_radius, "%s(-x)" % self.label,
            self.integral, self.radial_fourier, self.width,
            self.mixture)

    def __repr__(self):
        return "TestFunction(%s, d=%d)" % (self.label, self.dim)


class QuadResult(object):
    """Numerical value with an absolute error estimate."""

    def __init__(self, value, error=0.0, converged=True, evaluations=0):
        self.value = float(value)
        self.error = float(abs(error))
        self.converged = bool(converged)
        self.evaluations = int(evaluations)

    def scaled(self, factor):
        return QuadResult(factor * self.value, abs(factor) * self.error,
                          self.converged, self.evaluations)

    def __mul__(self, other):
        if isinstance(other, QuadResult):
            return QuadResult(
                self.value * other.value,
                abs(self.value) * other.error + abs(other.value) * self.error,
                self.converged and other.converged,
                self.evaluations + other.evaluations)
        return self.scaled(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QuadResult):
            value = self.value / other.value
            error = abs(value) * (self.error / abs(self.value or 1.0)
                                  + other.error / abs(other.value))
            return QuadResult(value, error,
                              self.converged and other.converged,
                              self.evaluations + other.evaluations)
        return self.scaled(1.0 / other)

    def __add__(self, other):
        return QuadResult(self.value + other.value, self.error + other.error,
                          self.converged and other.converged,
                          self.evaluations + other.evaluations)

    def relative_error(self):
        if self.value == 0.0:
            return self.error
        return self.error / abs(self.value)

    def as_dict(self):
        return {'value': self.value, 'error': self.error,
                'converged': self.converged, 'evaluations': self.evaluations}

    def __float__(self):
        return self.value

    def __repr__(self):
        return "QuadResult(%.15g +- %.3g)" % (self.value, self.error)


class SampleSet(object):
    """
    Tagged i.i.d. Monte Carlo draws. ``meta`` carries everything needed to
    regenerate the draws: model, function label, n, t, grid size, master
    seed and path count.
    """

    def __init__(self, values, tag, meta=None):
        if tag not in SAMPLE_TAGS:
            raise PyFbmCltDomainException("unknown sample tag %r" % tag, [])
        values = np.array(values, dtype=np.float64).ravel()
        values.flags.writeable = False
        self.values = values
        self.tag = tag
        self.meta = dict(meta or {})

    def __len__(self):
        return self.values.size

    def _require(self, count):
        if self.values.size < count:
            raise PyFbmCltDomainException(
                "%s sample set needs at least %d draws, has %d"
                % (self.tag, count, self.values.size), [])

    def mean(self):
        self._require(1)
        return float(np.mean(self.values))

    def variance(self):
        self._require(2)
        return float(np.var(self.values, ddof=1))

    def moment(self, k):
        self._require(1)
        return float(np.mean(self.values ** k))

    def moment_stderr(self, k):
        self._require(2)
        return float(np.std(self.values ** k, ddof=1)
                     / np.sqrt(self.values.size))

    def kurtosis(self):
        """Raw fourth over squared raw second moment (3 for a centred normal)."""
        self._require(2)
        second = self.moment(2)
        return self.moment(4) / second ** 2

    def summary(self):
        return {'tag': self.tag, 'count': int(self.values.size),
                'mean': self.mean(), 'variance': self.variance(),
                'moment4': self.moment(4)}


class TimeConfig(object):
    """
    Disjoint intervals (a_i, b_i] with b_i <= a_{i+1} and a multi-index m.
    """

    def __init__(self, intervals, multi_index, model):
        intervals = [(float(a), float(b)) for a, b in intervals]
        multi_index = [int(m) for m in multi_index]
        if not intervals:
            raise PyFbmCltDomainException("at least one interval is needed", [])
        if len(intervals) != len(multi_index):
            raise PyFbmCltDomainException(
                "%d intervals but %d exponents"
                % (len(intervals), len(multi_index)), [])
        previous = 0.0
        for a, b in intervals:
            if a < previous or not a < b:
                raise PyFbmCltDomainException(
                    "intervals must satisfy 0 <= a_1 < b_1 <= a_2 < ..., "
                    "got %r" % (intervals,), [])
            previous = b
        for m in multi_index:
            if m < 1:
                raise PyFbmCltDomainException(
                    "exponents must be >= 1, got %r" % (multi_index,), [])
        self.intervals = intervals
        self.multi_index = multi_index
        self.model = model

    @property
    def order(self):
        return sum(self.multi_index)

    def all_even(self):
        return all(m % 2 == 0 for m in self.multi_index)

    def dimension(self):
        """Number of integration variables of the moment integral."""
        return sum(m // 2 for m in self.multi_index)

    def as_dict(self):
        return {'intervals': [list(i) for i in self.intervals],
                'm': list(self.multi_index)}


class RunConfig(object):
    """
    Fully resolved settings of one command line run. Unknown keys are
    rejected by the parser before a RunConfig is built.
    """

    def __init__(self, subcommand, **settings):
        self.subcommand = subcommand
        values = dict(DEFAULTS)
        values.update(settings)
        self.__dict__.update(values)
        self._keys = sorted(values)

    def model(self):
        return HurstModel(self.H, self.d, conjecture=self.conjecture)

    def as_dict(self):
        resolved = {'subcommand': self.subcommand}
        for key in self._keys:
            resolved[key] = getattr(self, key)
        return resolved

    def __repr__(self):
        return "RunConfig(%s)" % self.subcommand
