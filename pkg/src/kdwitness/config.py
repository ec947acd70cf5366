"""Central numerical tolerances.

Every default listed here can be overridden per call; the base tolerance can
additionally be overridden globally through the ``KD_DEFAULT_TOL``
environment variable.
"""

import os

from .errors import ValidationError

# Base tolerance for validation, positivity, and support-count thresholds.
BASE_TOL = 1e-9

# Feasibility tolerance of the hull-membership linear programs.
FEASIBILITY_TOL = 1e-8

# An "outside" verdict requires margin > MARGIN_FACTOR * feasibility tol.
MARGIN_FACTOR = 10.0

# Global-phase deduplication tolerance for enumerated pure states.
STATE_DEDUP_TOL = 1e-8

# Two facets are identified when their normal forms agree to this tolerance.
FACET_MATCH_TOL = 1e-7

# Eigenvalue cutoff defining the rank used by decomposition searches.
RANK_CUTOFF = 1e-10

# Ensemble members with weight at or below this are dropped.
WEIGHT_CUTOFF = 1e-12

# Upper and lower roof bounds closing within this gap are reported exact.
EXACT_GAP_TOL = 1e-6


def default_tol() -> float:
    """Base tolerance, honouring the KD_DEFAULT_TOL environment override."""
    raw = os.environ.get("KD_DEFAULT_TOL")
    if raw is None:
        return BASE_TOL
    try:
        value = float(raw)
    except ValueError:
        raise ValidationError(f"KD_DEFAULT_TOL is not a number: {raw!r}") from None
    if value < 0.0:
        raise ValidationError(f"KD_DEFAULT_TOL must be nonnegative, got {value}")
    return value
