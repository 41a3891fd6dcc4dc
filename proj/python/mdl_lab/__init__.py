"""Python bindings for the mdl-lab experiment library."""

import json
from fractions import Fraction

from . import _mdl
from ._mdl import ConfigError, Error, MalformedCode, TooLarge, describe, experiments, map_index

__version__ = _mdl.__version__

__all__ = [
    "ConfigError",
    "Error",
    "MalformedCode",
    "TooLarge",
    "cumulative",
    "decode",
    "describe",
    "encode",
    "experiments",
    "map_index",
    "predict",
    "run",
]


def _text(values):
    return None if values is None else [str(v) for v in values]


def _number(text):
    try:
        return Fraction(text)
    except ValueError:
        return float(text)


def run(experiment, params=None, seed=0, horizon=None, samples=None, mode=None, threads=1, config=None, out=None):
    """Run a registered experiment and return the parsed report."""
    if isinstance(config, dict):
        config = json.dumps(config)
    params = {k: str(v) for k, v in (params or {}).items()}
    text = _mdl.run(experiment, params, seed, horizon, samples, mode, threads, config, None if out is None else str(out))
    return json.loads(text)


def predict(thetas, kind, x="", weights=None, tie_break="largest_weight"):
    """Predictive distribution of a Bernoulli class; exact entries come back as Fractions."""
    return [_number(v) for v in _mdl.predict(_text(thetas), kind, x, _text(weights), tie_break)]


def cumulative(thetas, true_index, horizon, predictor, metric="square", weights=None):
    return _number(_mdl.cumulative(_text(thetas), true_index, horizon, predictor, metric, _text(weights)))


def encode(thetas, model, x, weights=None):
    return _mdl.encode(_text(thetas), model, x, _text(weights))


def decode(thetas, bits, weights=None):
    return _mdl.decode(_text(thetas), bits, _text(weights))
