"""Backend selection for the hot kernels.

Set ``MAXDUO_DISABLE_NUMBA=1`` to force the pure-numpy implementations, or
``MAXDUO_BACKEND=numpy|numba`` to pick explicitly. The numpy path is also
used when numba cannot be imported.
"""
from __future__ import annotations

import os

try:  # pragma: no cover - depends on the environment
    import numba
except ImportError:  # pragma: no cover
    numba = None

_FALSY = {"", "0", "false", "no", "off"}


def _choose() -> str:
    explicit = os.environ.get("MAXDUO_BACKEND", "").strip().lower()
    if explicit in ("numpy", "numba"):
        if explicit == "numba" and numba is None:
            raise ImportError("MAXDUO_BACKEND=numba but numba is not installed")
        return explicit
    if os.environ.get("MAXDUO_DISABLE_NUMBA", "").strip().lower() not in _FALSY:
        return "numpy"
    return "numba" if numba is not None else "numpy"


BACKEND = _choose()
HAVE_NUMBA = numba is not None


def njit(*args, **kws):
    """``numba.njit`` with on-disk caching; identity when numba is missing."""
    if numba is None:
        if args and callable(args[0]):
            return args[0]
        return lambda f: f
    kws.setdefault("cache", True)
    kws.setdefault("nogil", True)
    return numba.njit(*args, **kws)
