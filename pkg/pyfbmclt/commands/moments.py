__author__ = 'pyfbmclt developers'

import numpy as np

from .base import BaseCommand
from ..gaussian_analysis import interval_moment
from ..types import TimeConfig
from ..utils import parse_intervals, parse_multi_index


#
# Moments of W(L(0)) over disjoint intervals
#
class MomentsCommand(BaseCommand):

    def _execute(self):
        config = TimeConfig(parse_intervals(self._config.intervals),
                            parse_multi_index(self._config.m), self._model)
        moment = interval_moment(config)
        self._result('time_config', config.as_dict())
        self._result('moment', moment.as_dict())
        self._check('converged', moment.converged)

        # single interval [0, t] with m = 2 has a closed form
        if config.multi_index == [2] and config.intervals[0][0] == 0.0:
            model = self._model
            t = config.intervals[0][1]
            closed = (2.0 * np.pi) ** (-model.d / 2.0) \
                * t ** (1.0 - model.hd) / (1.0 - model.hd)
            self._result('closed_form', closed)
            self._check('closed_form',
                        abs(moment.value - closed) < 1e-8 * max(1.0, closed))
