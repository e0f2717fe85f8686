"""GL(n) quasi-Maass forms and approximate-converse bounds (n = 2, 3).

Configs are the same JSON documents the maass-certify CLI reads; they may be
passed as text or as dicts.
"""

import json

from . import _core
from ._core import (
    HypothesisViolation,
    InvalidInput,
    MaassError,
    NumericalFailure,
    Unsupported,
    c_delta,
    casimir_eigenvalue,
    laplace_eigenvalue,
    max_delta,
    natural_norm_bound,
    natural_symbol,
    verify_annihilation,
    vol_ball,
)

__version__ = _core.version()


def _text(config):
    return config if isinstance(config, str) else json.dumps(config)


def bound(config):
    """Main bound report as a dict."""
    return json.loads(_core.bound_json(_text(config)))


def laplacian_bound(config):
    return json.loads(_core.laplacian_bound_json(_text(config)))


def distance(config):
    return _core.distance(_text(config))


def canonical_config(config):
    return _core.canonical_config(_text(config))


def config_hash(config):
    return _core.config_hash(_text(config))
