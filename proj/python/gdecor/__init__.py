"""Mode and event operator predictions for gravitational decorrelation.

Configuration mappings use the same keys as the command-line tool; values
may be numbers, booleans or strings.
"""

import json

from ._core import (
    ConfigError,
    ConvergenceError,
    DomainError,
    Error,
    RegimeError,
    ResourceError,
    UnsupportedError,
    coordinate_flight_time,
    proper_time_radial,
)
from . import _core

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "Error",
    "RegimeError",
    "ResourceError",
    "UnsupportedError",
    "compare",
    "coordinate_flight_time",
    "predict",
    "proper_time_radial",
    "sweep",
    "sweep_csv",
    "threshold",
    "validate",
]


def _text(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _config(cfg=None, **overrides):
    merged = dict(cfg or {})
    merged.update(overrides)
    return {key: _text(value) for key, value in merged.items()}


def predict(cfg=None, **overrides):
    """Single-point report as a dict."""
    return json.loads(_core.predict_json(_config(cfg, **overrides)))


def compare(cfg=None, **overrides):
    """Mode and event reports, keyed "mode" and "event"."""
    return json.loads(_core.compare_json(_config(cfg, **overrides)))


def sweep(cfg=None, **overrides):
    """Sweep rows in axis order; needs sweep_axis/from/to/steps."""
    return json.loads(_core.sweep_json(_config(cfg, **overrides)))


def sweep_csv(cfg=None, **overrides):
    return _core.sweep_csv(_config(cfg, **overrides))


def threshold(cfg=None, **overrides):
    """Threshold height in meters."""
    return _core.threshold(_config(cfg, **overrides))


def validate(inject_mass_sign_flip=False):
    return json.loads(_core.validate_json(inject_mass_sign_flip))
