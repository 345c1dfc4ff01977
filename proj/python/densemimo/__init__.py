"""Dense multi-antenna network Monte Carlo simulator and asymptotic toolkit.

The C++ core speaks JSON strings; this package converts dicts at the
boundary so the natural Python surface is plain dicts in, dicts out.
"""

import json as _json

from densemimo import _core

__version__ = _core.__version__
rng_id = _core.rng_id

UsageError = _core.UsageError
DomainError = _core.DomainError


def _dumps(config):
    if isinstance(config, str):
        return config
    return _json.dumps(config)


def canonical(config=None):
    """Canonical JSON form of a config dict (all defaults made explicit)."""
    return _json.loads(_core.canonical(_dumps(config or {})))


def digest(config=None):
    return _core.digest(_dumps(config or {}))


def validate(config=None):
    """Feasibility report (conditions (i)-(iii) plus Assumption 1)."""
    return _json.loads(_core.validate(_dumps(config or {})))


def asymptote(config=None):
    """Asymptotic constants and per-law ASE regimes."""
    return _json.loads(_core.asymptote(_dumps(config or {})))


def evaluate(config, r):
    return _core.evaluate(_dumps(config), r)


def gamma_integral(config=None):
    return _core.gamma_integral(_dumps(config or {}))


def truncation_radius(config, lambda_, epsilon=1e-3):
    return _core.truncation_radius(_dumps(config), lambda_, epsilon)


def miso_sinr_limit(config=None):
    return _core.miso_sinr_limit(_dumps(config or {}))


def mimo_sinr_limit(config, y):
    return _core.mimo_sinr_limit(_dumps(config), y)


def antennas_at(config, lambda_):
    return _core.antennas_at(_dumps(config), lambda_)


def sample_miso_gain(n_t, count, seed=1):
    return _core.sample_miso_gain(n_t, count, seed)


def sample_mimo_max_eig(n_t, n_r, count, seed=1):
    return _core.sample_mimo_max_eig(n_t, n_r, count, seed)


def sample_serving_distance(lambda_, count, seed=1):
    return _core.sample_serving_distance(lambda_, count, seed)


def estimate(config=None):
    """Run the Monte Carlo sweep; returns the full sweep document."""
    return _json.loads(_core.estimate(_dumps(config or {})))


def sweep_csv(config=None):
    return _core.sweep_csv(_dumps(config or {}))


def realizations_csv(config=None, trials=8):
    return _core.realizations_csv(_dumps(config or {}), trials)


def run_trial(config, lambda_index, trial_index):
    return _json.loads(_core.run_trial(_dumps(config), lambda_index, trial_index))


def verify(experiment, config=None):
    return _json.loads(_core.verify(experiment, _dumps(config or {})))
