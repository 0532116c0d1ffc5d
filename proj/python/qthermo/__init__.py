"""Energy and work cloning, splitting and masking toolkit."""

import json

from ._core import *  # noqa: F401,F403
from ._core import QThermoError, __version__, _run_json


def run_experiment(experiment, threads=1, **fields):
    """Run a registered experiment and return its report as a dict."""
    config = dict(fields, experiment=experiment)
    return json.loads(_run_json(json.dumps(config), threads))["reports"][0]
