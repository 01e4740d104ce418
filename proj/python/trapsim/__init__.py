"""Python bindings for the trapsim simulator."""

import json as _json

from ._trapsim import *  # noqa: F401,F403
from ._trapsim import _run_criterion_json

__version__ = "0.1.0"


def run_criterion(id, beta=None, n=None, replicas=None, seed=20240917):
    """Run one acceptance criterion and return its verdict as a dict."""
    return _json.loads(_run_criterion_json(id, beta=beta, n=n, replicas=replicas, seed=seed))
