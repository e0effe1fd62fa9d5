"""Random digraph models: exact laws, sampling and verification oracles.

Models are given as dicts (or JSON strings) in the same schema the
``randig`` command line accepts, e.g. ``{"family": "ard", "n": 3, "p_a": 0.4}``.
"""

import json as _json

from . import _randig
from ._randig import DegenerateModel, Unsupported, arc_counts, arc_slot, canonical_mask, derd_ard_params
from ._randig import knn_digraph, n2_classify, spectral_cycle_moment

__all__ = [
    "DegenerateModel",
    "Unsupported",
    "arc_counts",
    "arc_slot",
    "canonical_mask",
    "derd_ard_params",
    "event_probability",
    "exact_pmf",
    "has_exact_pmf",
    "invariance_check",
    "knn_digraph",
    "n2_classify",
    "pmf_csv",
    "rnnd_stats",
    "run_cli",
    "sample",
    "sample_masks",
    "spectral_cycle_moment",
    "total_variation",
    "validate",
]


def _text(model):
    return model if isinstance(model, str) else _json.dumps(model)


def validate(model):
    _randig.validate(_text(model))


def has_exact_pmf(model):
    return _randig.has_exact_pmf(_text(model))


def exact_pmf(model):
    """Nonzero masses keyed by arc-slot bitmask (edge-slot bitmask for graph models)."""
    return _randig.exact_pmf(_text(model))


def pmf_csv(model):
    return _randig.pmf_csv(_text(model))


def sample(model, seed):
    """One draw as a list of (tail, head) arcs, vertices numbered from 1."""
    return _randig.sample_arcs(_text(model), seed)


def sample_masks(model, count, seed):
    return _randig.sample_masks(_text(model), count, seed)


def total_variation(model_a, model_b):
    return _randig.total_variation(_text(model_a), _text(model_b))


def invariance_check(model, tol=1e-12):
    return _randig.invariance_check(_text(model), tol)


def event_probability(model, required, forbidden=(), n_samples=0, seed=0):
    return _randig.event_probability(_text(model), list(required), list(forbidden), n_samples, seed)


def rnnd_stats(model, n_samples, seed):
    return _json.loads(_randig.rnnd_stats_json(_text(model), n_samples, seed))


def run_cli(*args):
    """Runs ``randig`` in-process; returns (exit_code, stdout, stderr)."""
    return _randig.run_cli([str(a) for a in args])
