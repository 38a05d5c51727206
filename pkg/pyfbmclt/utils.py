__author__ = 'pyfbmclt developers'

import functools
import logging
import os

import numpy as np

from .constants import ENV_DEBUG, ENV_DEBUG_VERBOSE
from .exceptions import PyFbmCltPreconditionException, \
    PyFbmCltUsageException

_logger = logging.getLogger('pyfbmclt')


def is_debug_active():
    if ENV_DEBUG in os.environ:
        if os.environ[ENV_DEBUG].lower() in ( '1', 'true' ):
            return True
    return False


def is_debug_verbose():
    if ENV_DEBUG_VERBOSE in os.environ:
        if is_debug_active() and os.environ[ENV_DEBUG_VERBOSE].lower() \
                in ( '1', 'true' ):
            return True
    return False


def dlog( msg, *args ):
    # the handler is attached on first use so that importing the package
    # never touches the root logger configuration
    if is_debug_active():
        if not _logger.handlers:
            handler = logging.StreamHandler()
            handler.setFormatter(logging.Formatter("[DEBUG]:: %(message)s"))
            _logger.addHandler(handler)
            _logger.setLevel(logging.DEBUG)
        _logger.debug(msg, *args)


def _find_model(args, kwargs):
    if 'model' in kwargs:
        return kwargs['model']
    for arg in args:
        if hasattr(arg, 'require_theorem_regime'):
            return arg
    return None


#
# need theorem regime decorator
def need_theorem_regime(wrap):
    @functools.wraps(wrap)
    def wrap_function(*args, **kwargs):
        model = _find_model(args, kwargs)
        if model is not None:
            model.require_theorem_regime()
        return wrap(*args, **kwargs)

    return wrap_function


#
# need constant regime decorator
def need_constant_regime(wrap):
    @functools.wraps(wrap)
    def wrap_function(*args, **kwargs):
        model = _find_model(args, kwargs)
        if model is not None:
            model.require_constant_regime()
        return wrap(*args, **kwargs)

    return wrap_function


def derive_seed(master_seed, index):
    """
    Hash (master_seed, index) into a 64 bit stream seed.
    The result depends on nothing else, so ensembles do not depend on the
    order (or the process) in which paths are drawn.
    """
    sequence = np.random.SeedSequence([int(master_seed) & 0xFFFFFFFFFFFFFFFF,
                                       int(index)])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def is_power_of_two(value):
    return isinstance(value, (int, np.integer)) and value >= 1 \
        and (value & (value - 1)) == 0


def require_power_of_two(value, name='grid_size'):
    if not is_power_of_two(value):
        raise PyFbmCltPreconditionException(
            "%s must be a power of two, got %r" % (name, value), [])


def parse_float_list(raw, sep=','):
    try:
        if isinstance(raw, (list, tuple)):
            return [float(x) for x in raw]
        return [float(x) for x in str(raw).split(sep) if x.strip() != '']
    except ValueError:
        raise PyFbmCltUsageException(
            "cannot parse %r as a list of numbers" % (raw,), [])


def parse_intervals(raw):
    """
    "0,1;2,3" -> [(0.0, 1.0), (2.0, 3.0)]
    """
    if isinstance(raw, (list, tuple)):
        return [tuple(float(v) for v in pair) for pair in raw]
    intervals = []
    for chunk in str(raw).split(';'):
        if not chunk.strip():
            continue
        bounds = parse_float_list(chunk)
        if len(bounds) != 2:
            raise PyFbmCltUsageException(
                "interval %r must be written as a,b" % chunk, [])
        intervals.append((bounds[0], bounds[1]))
    return intervals


def parse_multi_index(raw):
    try:
        if isinstance(raw, (list, tuple)):
            return [int(x) for x in raw]
        if isinstance(raw, int):
            return [raw]
        return [int(x) for x in str(raw).split(',') if x.strip() != '']
    except ValueError:
        raise PyFbmCltUsageException(
            "cannot parse %r as a multi-index" % (raw,), [])
