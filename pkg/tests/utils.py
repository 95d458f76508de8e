from __future__ import absolute_import, division, print_function

import json
import os

import jsonschema
from click.testing import CliRunner

from aimkg.cli import cli
from aimkg.models import ModelParams
from aimkg.utils import load_schema

COUPLED = ModelParams(alpha=1.0, beta=0.1, gamma=0.05, M=1.0)
HYDROGEN_LIKE = ModelParams(alpha=1.0, beta=0.0, gamma=0.0, M=1.0)

# E(N=0, n=0, m=1) for COUPLED, from iterating the closed-form right-hand side by hand
COUPLED_GROUND_RANGE = (0.8915, 0.8919)


def run_cli(args):
    """Invoke the command group in-process and return the click Result."""
    return CliRunner().invoke(cli, [str(a) for a in args], catch_exceptions=False)


def read_json(path):
    with open(str(path)) as f:
        return json.load(f)


def read_lines(path):
    with open(str(path)) as f:
        return f.read().splitlines()


def check_schema(payload, name):
    jsonschema.validate(payload, load_schema(name))


def check_sidecar(path):
    meta_path = str(path) + '.meta.json'
    assert os.path.exists(meta_path)
    meta = read_json(meta_path)
    assert 'generated' in meta
    assert 'config' in meta
    return meta
