__author__ = 'pyfbmclt developers'

from .base import BaseCommand
from ..limit_constant import c_closed, c_integral


#
# Limit constant C_{H,d}
#
class ConstantsCommand(BaseCommand):

    def _execute(self):
        model = self._model
        model.require_constant_regime()
        numeric = c_integral(model, tol=min(1e-10, self._config.tol * 1e-2))
        closed = c_closed(model)
        residual = abs(numeric.value - closed)

        self._result('c_integral', numeric.as_dict())
        self._result('c_closed', closed)
        self._result('residual', residual)
        self._result('relative_residual', residual / closed)
        self._check('constant_identity',
                    residual < self._config.tol * max(1.0, closed))
