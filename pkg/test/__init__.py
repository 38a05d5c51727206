__author__ = 'pyfbmclt developers'

import os

try:
    import configparser
except ImportError:
    import ConfigParser as configparser

from pyfbmclt.constants import ENV_FULL_TESTS

_HERE = os.path.dirname(os.path.abspath(__file__))


def getTestConfig():
    config = configparser.RawConfigParser()
    config.read([os.path.join(_HERE, 'tests.cfg'), 'tests.cfg'])

    # getint() and getboolean() raise if the value has the wrong type
    conf = {
        'full': config.getboolean('tier', 'full'),
        'seed': config.getint('run', 'seed'),
        'workers': config.getint('run', 'workers'),
    }
    return conf


def full_tier():
    """Monte Carlo heavy tests run only when asked for."""
    if os.environ.get(ENV_FULL_TESTS, '').lower() in ('1', 'true'):
        return True
    return getTestConfig()['full']
