"""
Report, CSV and config-file codecs.

Reports are JSON documents with sorted keys, validated against
report_schema.json and written atomically (temp file + os.replace).
"""
__author__ = 'pyfbmclt developers'

import configparser
import functools
import io
import json
import os
import tempfile

import jsonschema
import numpy as np

from .exceptions import PyFbmCltException, PyFbmCltIOException, \
    PyFbmCltUsageException
from .types import FbmPath, HurstModel, QuadResult, SampleSet

SCHEMA_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                           'report_schema.json')
CONFIG_SECTION = 'run'


def _finite(value):
    """Non-finite floats become None, containers are walked."""
    if isinstance(value, dict):
        return dict((key, _finite(item)) for key, item in value.items())
    if isinstance(value, (list, tuple)):
        return [_finite(item) for item in value]
    if isinstance(value, np.ndarray):
        return _finite(value.tolist())
    if isinstance(value, (float, np.floating)) and not np.isfinite(value):
        return None
    return value


class ReportEncoder(json.JSONEncoder):
    """JSON encoder aware of numpy scalars and the lab value objects."""

    def default(self, o):
        if isinstance(o, (np.bool_,)):
            return bool(o)
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.floating):
            return float(o)
        if isinstance(o, np.ndarray):
            return _finite(o.tolist())
        if isinstance(o, (QuadResult, HurstModel)):
            return _finite(o.as_dict())
        if isinstance(o, SampleSet):
            return _finite(o.summary())
        return json.JSONEncoder.default(self, o)


def encode_report(report):
    """Strict JSON: NaN and infinities are written as null."""
    return json.dumps(_finite(report), cls=ReportEncoder, sort_keys=True,
                      indent=2, allow_nan=False) + "\n"


@functools.lru_cache(maxsize=1)
def load_schema():
    with open(SCHEMA_FILE) as handle:
        return json.load(handle)


def validate_report(report):
    """Raises PyFbmCltException when the report breaks the schema."""
    try:
        jsonschema.validate(instance=json.loads(encode_report(report)),
                            schema=load_schema())
    except jsonschema.ValidationError as e:
        raise PyFbmCltException(
            "report does not match %s" % os.path.basename(SCHEMA_FILE),
            [('schema', e.message)])


def write_atomic(text, path):
    directory = os.path.dirname(os.path.abspath(path))
    tmp_path = None
    try:
        os.makedirs(directory, exist_ok=True)
        fd, tmp_path = tempfile.mkstemp(
            dir=directory, prefix='.' + os.path.basename(path), suffix='.tmp')
        with os.fdopen(fd, 'w') as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except OSError as e:
        if tmp_path is not None and os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise PyFbmCltIOException(
            "cannot write %s" % path, path, [('io', str(e))])
    return path


def write_report(report, path):
    validate_report(report)
    return write_atomic(encode_report(report), path)


#
# CSV
#
def export_csv(path, file_name):
    """
    One FbmPath as CSV: a '# H=.. d=.. T=.. M=.. seed=..' line, a column
    header and rows t,B1..Bd.
    """
    columns = ['t'] + ['B%d' % (i + 1) for i in range(path.model.d)]
    data = np.column_stack([path.times, path.points()])
    buffer = io.StringIO()
    np.savetxt(buffer, data, delimiter=',', fmt='%.17g',
               header="# %s\n%s" % (path.header(), ','.join(columns)),
               comments='')
    return write_atomic(buffer.getvalue(), file_name)


def _parse_header(line):
    fields = dict(item.split('=', 1) for item in line.lstrip('#').split())
    try:
        model = HurstModel(float(fields['H']), int(fields['d']))
        seed = fields['seed']
        return model, float(fields['T']), int(fields['M']), \
            (None if seed == 'None' else int(seed))
    except (KeyError, ValueError):
        raise PyFbmCltUsageException(
            "malformed path header %r" % line.strip(), [])


def read_csv(file_name):
    try:
        with open(file_name) as handle:
            header = handle.readline()
            handle.readline()
            data = np.loadtxt(handle, delimiter=',', ndmin=2)
    except OSError as e:
        raise PyFbmCltIOException("cannot read %s" % file_name, file_name,
                                  [('io', str(e))])
    model, horizon, grid_size, seed = _parse_header(header)
    return FbmPath(model, horizon, grid_size, data[:, 1:].T, seed)


def write_samples_csv(sample_sets, file_name):
    """One column per SampleSet (named by tag), padded with empty cells."""
    length = max(len(sample) for sample in sample_sets)
    lines = [','.join(sample.tag for sample in sample_sets)]
    for row in range(length):
        lines.append(','.join(
            repr(float(sample.values[row])) if row < len(sample) else ''
            for sample in sample_sets))
    return write_atomic("\n".join(lines) + "\n", file_name)


#
# config files
#
def read_config_file(file_name):
    """
    Flat 'key = value' file ('#' comments) -> dict of strings. Keys keep
    their case so that H and d match the command line flags.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=('#',))
    parser.optionxform = str
    try:
        with open(file_name) as handle:
            text = handle.read()
    except OSError as e:
        raise PyFbmCltIOException("cannot read %s" % file_name, file_name,
                                  [('io', str(e))])
    try:
        parser.read_string("[%s]\n%s" % (CONFIG_SECTION, text))
    except configparser.Error as e:
        raise PyFbmCltUsageException(
            "cannot parse config file %s" % file_name, [('config', str(e))])
    return dict(parser[CONFIG_SECTION])
