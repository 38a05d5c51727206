__author__ = 'pyfbmclt developers'

import datetime
import time

from ..constants import REPORT_SCHEMA, VERSION
from ..exceptions import PyFbmCltUsageException
from ..serialization import write_samples_csv
from ..utils import dlog


class BaseCommand(object):
    """
    One subcommand run: prepare(config).run().fetch_report().

    Subclasses implement _execute() and fill self._results through
    _result() and self._checks through _check().
    """

    # subcommands that accept --csv
    csv_output = False

    def __init__(self, lab=None):
        self._lab = lab
        self._config = None
        self._model = None
        self._results = {}
        self._checks = {}
        self._samples = []
        self._path = None
        self._started = None
        self._elapsed = 0.0
        self._done = False

    def prepare(self, config):
        """
        :type config: pyfbmclt.types.RunConfig
        """
        self._config = config
        self._model = config.model()
        self._results = {}
        self._checks = {}
        self._samples = []
        self._done = False
        return self

    def _execute(self):
        raise NotImplementedError

    def run(self):
        if self._config is None:
            raise PyFbmCltUsageException(
                "%s has not been prepared" % type(self).__name__, [])
        dlog("running %s with %r", type(self).__name__,
             self._config.as_dict())
        self._started = time.time()
        self._execute()
        self._elapsed = time.time() - self._started
        self._done = True
        return self

    def _result(self, key, value):
        self._results[key] = value
        return self

    def _check(self, name, passed):
        self._checks[name] = bool(passed)
        dlog("check %s: %s", name, 'pass' if passed else 'FAIL')
        return self

    def passed(self):
        return all(self._checks.values())

    def fetch_report(self):
        if not self._done:
            self.run()
        return {
            'schema': REPORT_SCHEMA,
            'subcommand': self._config.subcommand,
            'config': self._config.as_dict(),
            'results': self._results,
            'checks': self._checks,
            'passed': self.passed(),
            'exploratory': self._model.exploratory(),
            'metadata': {
                'version': VERSION,
                'created': datetime.datetime.fromtimestamp(
                    self._started, datetime.timezone.utc)
                .strftime('%Y-%m-%dT%H:%M:%SZ'),
                'elapsed': self._elapsed,
            },
        }

    def has_csv(self):
        return self.csv_output and bool(self._samples)

    def write_csv(self, file_name):
        if not self._samples:
            raise PyFbmCltUsageException(
                "%s produces no CSV output" % self._config.subcommand, [])
        return write_samples_csv(self._samples, file_name)
