"""Size guards shared across modules.

``RESIST_CERT_GUARD`` raises the default limit of one million on stored
nonzeros and on search-space size.
"""

from __future__ import annotations

import os

DEFAULT_LIMIT = 10**6
MAX_BINOMIAL_N = 64
MAX_PPT_PARTIES = 6


def size_limit() -> int:
    raw = os.environ.get("RESIST_CERT_GUARD")
    if not raw:
        return DEFAULT_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"RESIST_CERT_GUARD must be an integer, got {raw!r}") from None
    return max(value, DEFAULT_LIMIT)


class GuardError(ValueError):
    """Input exceeds a configured size guard."""
