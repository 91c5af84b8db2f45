"""Hedged category game: Python access to the C++ core."""

import json as _json

from . import _core
from ._core import (
    Agent,
    Assertion,
    ConfigError,
    GameConfig,
    Hedge,
    HedgeScales,
    IoError,
    Label,
    Point,
    Polarity,
    Priors,
    UndefinedError,
    WeightRange,
    alo,
    apd,
    appropriateness,
    assertion_at,
    assertion_index,
    assertion_prior,
    choose_assertion,
    compute_update,
    consonant_mass,
    distance,
    ilo,
    initialize,
    ipd,
    label_distance,
    label_set_mass,
    listener_update,
    named_regime,
    negated_appropriateness,
    pair_overlap,
    posterior,
    posterior_from_chain,
    run,
    step,
    summary_csv,
)

__version__ = _core.__version__

TIMESERIES_COLUMNS = ("round", "apd", "alo")
SUMMARY_COLUMNS = ("pp", "regime", "pv", "pb", "pq", "replicate", "seed", "final_apd", "final_alo")


def settings(profile="desk", **overrides):
    """Resolved settings dict: profile defaults with overrides applied.

    Keys are the CLI flag names, with dashes written as underscores here.
    """
    flat = {k.replace("_", "-"): v for k, v in overrides.items()}
    return _json.loads(_core.resolve_settings(profile, _json.dumps(flat)))


def sweep(config=None, workers=1, **overrides):
    """Runs a sweep. `config` is a settings dict (see `settings`)."""
    if config is None:
        config = settings(**overrides)
    elif overrides:
        config = dict(config, **{k.replace("_", "-"): v for k, v in overrides.items()})
    return _core.sweep(_json.dumps(config), workers)


def emit(runs, config, out_dir):
    """Writes runs/*.csv, summary.csv and manifest.json under out_dir."""
    _core.emit(runs, _json.dumps(config), str(out_dir))
