"""Optional numba acceleration.

Kernels in :mod:`semipolar.kernels` are compiled with ``numba.njit`` when
numba is importable and ``MINK_DISABLE_NUMBA`` is unset (or ``0``).
Otherwise the numpy fallbacks are used.
"""

import os

try:
    import numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("MINK_DISABLE_NUMBA", "0") in ("", "0")

default_numba_kwargs = {
    "cache": True,
    "nogil": True,
}


def maybe_njit(func):
    """Return the jitted version of `func`, or None when numba is missing."""
    if not HAVE_NUMBA:
        return None
    return numba.njit(**default_numba_kwargs)(func)
