__author__ = 'pyfbmclt developers'

from .base import BaseCommand
from ..constants import NORM_AGREEMENT_TOL, NORM_METHOD_BOTH, \
    NORM_METHOD_DIRECT, NORM_METHOD_FOURIER, NORM_METHODS
from ..exceptions import PyFbmCltUsageException
from ..functions import from_spec, norm_direct, norm_fourier, norm_gap


#
# H_0^beta norm of a test function
#
class NormCommand(BaseCommand):

    def _execute(self):
        config = self._config
        if config.method not in NORM_METHODS:
            raise PyFbmCltUsageException(
                "method must be one of %s, got %r"
                % ('|'.join(NORM_METHODS), config.method), [])
        f = from_spec(config.f, config.d)
        beta = self._model.beta if config.beta is None else float(config.beta)
        self._result('f', f.label)
        self._result('beta', beta)

        direct = fourier = None
        if config.method in (NORM_METHOD_DIRECT, NORM_METHOD_BOTH):
            direct = norm_direct(f, beta)
            self._result('direct', direct.as_dict())
        if config.method in (NORM_METHOD_FOURIER, NORM_METHOD_BOTH):
            fourier = norm_fourier(f, beta)
            self._result('fourier', fourier.as_dict())

        if direct is not None and fourier is not None:
            gap = norm_gap(direct, fourier)
            self._result('relative_gap', gap)
            self._check('norm_identity', gap < NORM_AGREEMENT_TOL)
        for name, value in (('direct', direct), ('fourier', fourier)):
            if value is not None:
                self._check('%s_nonnegative' % name,
                            value.value >= -value.error)
