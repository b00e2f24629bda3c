"""Backend selection for the hot kernels.

Numba is used when it can be imported and ``IRTR_DISABLE_NUMBA`` is unset
(or set to ``0``). Otherwise every kernel runs through its pure-numpy twin.
Both backends are always importable so they can be compared directly.
"""
import os

_flag = os.environ.get("IRTR_DISABLE_NUMBA", "").strip().lower()
_disabled = _flag not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover - depends on the environment
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not _disabled


def njit(func):
    """Compile ``func`` with numba when available, else return it untouched."""
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True, nogil=True)(func)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
