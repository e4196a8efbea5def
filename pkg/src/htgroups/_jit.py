"""Backend selection for the numeric kernels.

Set ``HTGROUPS_JIT=0`` to run the kernels as plain Python over numpy arrays.
When numba is missing the fallback is used automatically.
"""

import os

_flag = os.environ.get("HTGROUPS_JIT", "1").strip().lower()
USE_NUMBA = _flag not in ("0", "false", "no", "off")

if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

BACKEND = "numba" if USE_NUMBA else "numpy"


def kernel(fn):
    """Compile ``fn`` with numba in nopython mode, or return it unchanged."""
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn
