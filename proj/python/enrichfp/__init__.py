"""Python bindings for enrichfp.

Reports come back as plain dicts with the same fields as the CLI's report.json.
"""

import json

from ._enrichfp import (
    EnrichfpError,
    __version__,
    apply,
    convex_combine,
    family_names,
    metric,
    pair_names,
    relate,
    space_names,
)
from . import _enrichfp as _ext

__all__ = [
    "EnrichfpError",
    "__version__",
    "apply",
    "check_contraction",
    "check_space",
    "config_echo",
    "convex_combine",
    "family_names",
    "metric",
    "pair_names",
    "relate",
    "run",
    "solve",
    "space_names",
]


def _loads(text):
    # Non-finite numbers are written as the strings "inf" / "nan".
    return json.loads(text)


def solve(space, pair, x0, lam=0.5, tol=1e-10, max_iters=1_000_000, a_hint=None):
    """Alternating averaged iteration; the result includes every iterate under "points"."""
    return _loads(_ext._solve(space, pair, list(x0), lam, tol, max_iters, a_hint))


def check_contraction(space, pair, family, a=0.5, alpha=0.5, lam=0.5, b=0.0,
                      n_samples=10_000, tol=1e-9, seed=0):
    return _loads(_ext._check_contraction(space, pair, family, a, alpha, lam, b,
                                          n_samples, tol, seed))


def check_space(space, n_samples=10_000, tol=1e-9, seed=0):
    """Metric-axiom and convexity reports, in that order."""
    return _loads(_ext._check_space(space, n_samples, tol, seed))


def config_echo(config, mode=None):
    """Parse a config (dict or JSON text) and return it with all defaults filled."""
    text = config if isinstance(config, str) else json.dumps(config)
    return _loads(_ext._config_echo(text, mode))


def run(config, mode=None, write_files=False):
    """Execute a run; returns (exit_status, report)."""
    text = config if isinstance(config, str) else json.dumps(config)
    status, report = _ext._run(text, mode, write_files)
    return status, _loads(report)
