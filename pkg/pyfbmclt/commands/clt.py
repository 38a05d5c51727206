__author__ = 'pyfbmclt developers'

from .base import BaseCommand
from ..clt_lab import clt_acceptance, odd_moment_check
from ..functions import from_spec
from ..utils import derive_seed

# stream index of the odd moment ensemble
ODD_MOMENT_STREAM = 3


#
# CLT acceptance run
#
class CltTestCommand(BaseCommand):

    csv_output = True

    def _execute(self):
        config = self._config
        model = self._model
        model.require_theorem_regime()
        f = from_spec(config.f, config.d)

        report, samples = clt_acceptance(
            f, model, float(config.t), int(config.n), int(config.grid),
            int(config.paths), int(config.seed), workers=int(config.workers),
            epsilon=config.epsilon)
        odd = odd_moment_check(
            f, model, int(config.n), float(config.t), int(config.grid),
            int(config.paths), derive_seed(int(config.seed),
                                           ODD_MOMENT_STREAM),
            antithetic=False, workers=int(config.workers))

        checks = report.pop('checks')
        report.pop('passed')
        for key, value in sorted(report.items()):
            self._result(key, value)
        self._result('odd_moments', odd)
        for name, passed in sorted(checks.items()):
            self._check(name, passed)
        self._check('odd_moments', odd['passed'])
        self._samples = samples
