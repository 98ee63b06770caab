"""Package-wide numeric defaults."""

import os

DEFAULT_TOL = 1e-9
TOL_ENV_VAR = "HYBRID_CENTERS_TOL"


def default_tol():
    """Return the blended absolute/relative tolerance, honouring the env override."""
    raw = os.environ.get(TOL_ENV_VAR)
    if not raw:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        return DEFAULT_TOL
    return tol if tol > 0 else DEFAULT_TOL


def close(a, b, tol=None):
    tol = default_tol() if tol is None else tol
    return abs(a - b) <= tol * (1.0 + max(abs(a), abs(b)))
