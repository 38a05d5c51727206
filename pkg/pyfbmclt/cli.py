"""
Command line entry point.

    pyfbmclt constants --H 0.6 --d 1
    pyfbmclt norm --f gaussian-diff:1,2 --beta 0.5 --method both
    pyfbmclt moments --H 0.6 --intervals "0,1;2,3" --m 2,2
    pyfbmclt simulate --H 0.7 --t 1 --grid 1024 --seed 7 --csv path.csv
    pyfbmclt clt-test --H 0.6 --n 64 --paths 2000 --grid 4096 --out r.json
    pyfbmclt verify --quick

Settings resolve as defaults < --config file < flags. Exit status: 0 all
checks passed, 1 a check failed, 2 usage or I/O error.
"""
__author__ = 'pyfbmclt developers'

import argparse
import os
import sys

from .constants import DEFAULTS, ENV_OUTPUT_DIR, EXIT_FAILED, EXIT_OK, \
    EXIT_USAGE, NORM_METHODS, SUBCOMMANDS, TIER_FULL, TIER_QUICK, VERSION
from .exceptions import PyFbmCltDomainException, PyFbmCltException, \
    PyFbmCltIOException, PyFbmCltPreconditionException, \
    PyFbmCltUsageException
from .lab import FbmLab
from .serialization import encode_report, read_config_file, \
    validate_report, write_report
from .types import RunConfig
from .utils import dlog, require_power_of_two

_TRUE = ('1', 'true', 'yes', 'on')
_FALSE = ('0', 'false', 'no', 'off')


def _to_bool(value):
    if isinstance(value, bool):
        return value
    if str(value).lower() in _TRUE:
        return True
    if str(value).lower() in _FALSE:
        return False
    raise ValueError(value)


def _optional(kind):
    def convert(value):
        if value is None or str(value).lower() in ('', 'none'):
            return None
        return kind(value)
    return convert


# how config file strings become RunConfig values
SETTING_TYPES = {
    'H': float, 'd': int, 'f': str, 'beta': _optional(float),
    'method': str, 'intervals': str, 'm': str, 'n': int, 't': float,
    'paths': int, 'grid': int, 'epsilon': _optional(float), 'tol': float,
    'seed': int, 'out': _optional(str), 'csv': _optional(str),
    'workers': int, 'conjecture': _to_bool, 'tier': str,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog='pyfbmclt',
        description="Simulation and verification lab for the CLT of "
                    "additive functionals of fractional Brownian motion.")
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + VERSION)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--H', type=float, help="Hurst index (default %r)"
                        % DEFAULTS['H'])
    common.add_argument('--d', type=int, help="dimension (default %r)"
                        % DEFAULTS['d'])
    common.add_argument('--seed', type=int, help="master seed")
    common.add_argument('--tol', type=float, help="identity tolerance")
    common.add_argument('--workers', type=int, help="worker processes")
    common.add_argument('--conjecture', action='store_true', default=None,
                        help="allow 1/(d+2) < H <= 1/(d+1), exploratory")
    common.add_argument('--config', help="key = value settings file")
    common.add_argument('--out', help="JSON report file")

    sub = parser.add_subparsers(dest='subcommand', metavar='subcommand')
    sub.required = True

    sub.add_parser('constants', parents=[common],
                   help="C_{H,d} by quadrature and in closed form")

    norm = sub.add_parser('norm', parents=[common],
                          help="H_0^beta norm, direct and Fourier")
    norm.add_argument('--f', help="test function, e.g. gaussian-diff:1,2")
    norm.add_argument('--beta', type=float, help="default 1/H - d")
    norm.add_argument('--method', choices=NORM_METHODS)

    moments = sub.add_parser('moments', parents=[common],
                             help="moments of W(L(0)) over intervals")
    moments.add_argument('--intervals', help='e.g. "0,1;2,3"')
    moments.add_argument('--m', help="exponents, e.g. 2,2")

    simulate = sub.add_parser('simulate', parents=[common],
                              help="one exact fBm path")
    simulate.add_argument('--t', type=float, help="horizon")
    simulate.add_argument('--grid', type=int, help="grid size (power of 2)")
    simulate.add_argument('--csv', help="path CSV file")

    clt = sub.add_parser('clt-test', parents=[common],
                         help="F_n(t) against the limit law")
    clt.add_argument('--f', help="test function, e.g. gaussian-diff:1,2")
    clt.add_argument('--n', type=int, help="scale n")
    clt.add_argument('--t', type=float, help="time t")
    clt.add_argument('--paths', type=int, help="Monte Carlo paths")
    clt.add_argument('--grid', type=int, help="grid size (power of 2)")
    clt.add_argument('--epsilon', type=float, help="kernel width")
    clt.add_argument('--csv', help="sample CSV file")

    verify = sub.add_parser('verify', parents=[common],
                            help="invariant suite")
    tier = verify.add_mutually_exclusive_group()
    tier.add_argument('--quick', dest='tier', action='store_const',
                      const=TIER_QUICK)
    tier.add_argument('--full', dest='tier', action='store_const',
                      const=TIER_FULL)
    return parser


def _coerce(key, value):
    if key not in SETTING_TYPES:
        raise PyFbmCltUsageException("unknown setting %r" % key, [])
    try:
        return SETTING_TYPES[key](value)
    except (TypeError, ValueError):
        raise PyFbmCltUsageException(
            "bad value %r for setting %r" % (value, key), [])


def resolve_config(args):
    """defaults < config file < flags, then regime validation."""
    settings = {}
    if getattr(args, 'config', None):
        for key, value in read_config_file(args.config).items():
            settings[key] = _coerce(key, value)
    for key in SETTING_TYPES:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    config = RunConfig(args.subcommand, **settings)

    try:
        model = config.model()
        if config.subcommand == 'constants':
            model.require_constant_regime()
        elif config.subcommand == 'clt-test':
            model.require_theorem_regime()
        if config.subcommand in ('simulate', 'clt-test'):
            require_power_of_two(config.grid, 'grid')
    except (PyFbmCltDomainException, PyFbmCltPreconditionException) as e:
        raise PyFbmCltUsageException(str(e), [])
    return config


def _report_path(config):
    if config.out:
        return config.out
    directory = os.environ.get(ENV_OUTPUT_DIR)
    if directory:
        return os.path.join(directory, '%s-report.json' % config.subcommand)
    return None


def run(config, stdout=None):
    """Runs a resolved RunConfig; returns the exit status."""
    stdout = stdout or sys.stdout
    command = FbmLab().get_command(SUBCOMMANDS[config.subcommand])
    if config.csv and not command.csv_output:
        raise PyFbmCltUsageException(
            "%s has no CSV output" % config.subcommand, [])
    report = command.prepare(config).run().fetch_report()

    target = _report_path(config)
    if target is None:
        validate_report(report)
        stdout.write(encode_report(report))
    else:
        write_report(report, target)
        dlog("report written to %s", target)
    if config.csv:
        if not command.has_csv():
            raise PyFbmCltUsageException(
                "%s produced no CSV data" % config.subcommand, [])
        command.write_csv(config.csv)
    return EXIT_OK if report['passed'] else EXIT_FAILED


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
        return run(config)
    except (PyFbmCltUsageException, PyFbmCltIOException) as e:
        sys.stderr.write("pyfbmclt: error: %s\n" % e)
        return EXIT_USAGE
    except PyFbmCltException as e:
        sys.stderr.write("pyfbmclt: %s: %s\n" % (type(e).__name__, e))
        return EXIT_FAILED
