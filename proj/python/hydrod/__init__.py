"""Hydrogen bound states in D = 3 - 2 eps dimensions."""

import json as _json

from ._hydrod import *  # noqa: F401,F403
from ._hydrod import HydrodError, run_json as _run_json

__all__ = [name for name in dir() if not name.startswith("_")]


def run(command, **options):
    """Run a CLI command (solve, table1, table2, kappa, vp2, extrapolate) and
    return the parsed JSON report."""
    return _json.loads(_run_json(command, options))
