# -*- coding:utf-8 -*-
"""
Output helpers shared by the command line: logging setup, 17-digit number
formatting, deterministic JSON and CSV writers, and schema lookup.

"""

import datetime
import json
import logging
import os
import sys
from fractions import Fraction

import numpy as np
import pandas as pd

NUMBER_FORMAT = '%.17g'
SCHEMA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'schemas')

LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def configure_logging(verbosity=0, stream=None):
    """Route the ``aimkg`` logger to ``stream`` (stderr by default); each ``-v`` lowers the level one step."""
    level = LEVELS[min(max(verbosity, 0), len(LEVELS) - 1)]
    logger = logging.getLogger('aimkg')
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger


def to_jsonable(obj):
    """Convert tuples, namedtuples, numpy scalars and Fractions into plain JSON types."""
    if hasattr(obj, '_asdict'):
        return dict((k, to_jsonable(v)) for k, v in obj._asdict().items())
    if isinstance(obj, dict):
        return dict((str(k), to_jsonable(v)) for k, v in obj.items())
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating, Fraction)):
        value = float(obj)
        return value if np.isfinite(value) else None
    return obj


def dumps(payload):
    return json.dumps(to_jsonable(payload), indent=2, sort_keys=True) + "\n"


def _open_target(path):
    if path is None or path == '-':
        return sys.stdout, False
    return open(path, 'w', newline=''), True


def write_text(path, text):
    target, owned = _open_target(path)
    try:
        target.write(text)
    finally:
        if owned:
            target.close()


def write_json(path, payload):
    write_text(path, dumps(payload))


def csv_text(header, rows):
    """CSV with a header row and every float printed with 17 significant digits."""
    frame = pd.DataFrame(list(rows), columns=list(header))
    return frame.to_csv(index=False, float_format=NUMBER_FORMAT, na_rep='nan', lineterminator='\n')


def write_csv(path, header, rows):
    write_text(path, csv_text(header, rows))


def write_sidecar(path, command, config):
    """Write ``<path>.meta.json`` holding the generation timestamp and the effective config."""
    if path is None or path == '-':
        return None
    meta_path = path + '.meta.json'
    generated = datetime.datetime.now(datetime.timezone.utc).replace(microsecond=0).isoformat()
    write_json(meta_path, {'generated': generated, 'command': command, 'config': config})
    return meta_path


def load_json(path):
    with open(path, 'r') as f:
        return json.load(f)


def schema_path(name):
    return os.path.join(SCHEMA_DIR, '{0}.schema.json'.format(name))


def load_schema(name):
    return load_json(schema_path(name))
