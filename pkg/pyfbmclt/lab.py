__author__ = 'pyfbmclt developers'

from .constants import CLT_TEST, CONSTANTS, MOMENTS, NORM, SIMULATE, \
    SUBCOMMANDS, VERIFY
from .exceptions import PyFbmCltUsageException
from .types import RunConfig


#
# Lab Command Factory
#
class FbmLab(object):

    _Commands = dict(
        ConstantsCommand="pyfbmclt.commands.constants",
        NormCommand="pyfbmclt.commands.norm",
        MomentsCommand="pyfbmclt.commands.moments",
        SimulateCommand="pyfbmclt.commands.simulate",
        CltTestCommand="pyfbmclt.commands.clt",
        VerifyCommand="pyfbmclt.commands.verify",
    )

    def run(self, config):
        return self.get_command(SUBCOMMANDS[config.subcommand]) \
            .prepare(config).run()

    def constants(self, **settings):
        return self.get_command(CONSTANTS) \
            .prepare(RunConfig('constants', **settings)).run().fetch_report()

    def norm(self, **settings):
        return self.get_command(NORM) \
            .prepare(RunConfig('norm', **settings)).run().fetch_report()

    def moments(self, **settings):
        return self.get_command(MOMENTS) \
            .prepare(RunConfig('moments', **settings)).run().fetch_report()

    def simulate(self, **settings):
        return self.get_command(SIMULATE) \
            .prepare(RunConfig('simulate', **settings)).run().fetch_report()

    def clt_test(self, **settings):
        return self.get_command(CLT_TEST) \
            .prepare(RunConfig('clt-test', **settings)).run().fetch_report()

    def verify(self, **settings):
        return self.get_command(VERIFY) \
            .prepare(RunConfig('verify', **settings)).run().fetch_report()

    def get_command(self, command=None):
        """
        Command Factory
        :rtype : pyfbmclt.commands.constants.ConstantsCommand,
                 pyfbmclt.commands.norm.NormCommand,
                 pyfbmclt.commands.moments.MomentsCommand,
                 pyfbmclt.commands.simulate.SimulateCommand,
                 pyfbmclt.commands.clt.CltTestCommand,
                 pyfbmclt.commands.verify.VerifyCommand
        :param command: str
        """
        try:
            if command is not None and self._Commands[command]:
                _module = __import__(
                    self._Commands[command],
                    globals(),
                    locals(),
                    [command]
                )

                # Get the right class from the imported module
                _Command = getattr(_module, command)
                return _Command(self)
        except KeyError as e:
            raise PyFbmCltUsageException(
                "Unable to find command " + str(e), []
            )
        raise PyFbmCltUsageException("No command given", [])
