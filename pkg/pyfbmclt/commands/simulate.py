__author__ = 'pyfbmclt developers'

import numpy as np

from .base import BaseCommand
from ..fbm import generate_path
from ..serialization import export_csv


#
# One exact fBm path
#
class SimulateCommand(BaseCommand):

    csv_output = True

    def _execute(self):
        config = self._config
        self._path = generate_path(self._model, float(config.t),
                                   int(config.grid), int(config.seed))
        values = self._path.values
        self._result('header', self._path.header())
        self._result('endpoint', values[:, -1].tolist())
        self._result('max_abs', float(np.max(np.abs(values))))
        self._result('increment_variance',
                     float(np.mean(np.diff(values, axis=1) ** 2)))
        self._result('expected_increment_variance',
                     self._path.spacing ** (2.0 * self._model.H))
        self._check('starts_at_zero', not np.any(values[:, 0]))

    def has_csv(self):
        return self._path is not None

    def write_csv(self, file_name):
        return export_csv(self._path, file_name)
