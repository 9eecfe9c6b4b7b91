"""Exact lattice vertex algebra computations and identity checks."""

import json

from ._core import ConfigInvalid, deformed_ope, normalize_state, ope, phi_check, suite_names
from ._core import verify as _verify

__all__ = ["ConfigInvalid", "deformed_ope", "normalize_state", "ope", "phi_check", "suite_names", "verify"]


def verify(config, suites=()):
    """Run suites for a config given as a dict or JSON text. Returns (passed, report dict)."""
    text = config if isinstance(config, str) else json.dumps(config)
    passed, report = _verify(text, list(suites))
    return passed, json.loads(report)
