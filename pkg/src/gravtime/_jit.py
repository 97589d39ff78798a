"""Optional numba acceleration.

Kernels in this package are plain Python written in a numba-compatible
subset. They are compiled with ``numba.njit`` unless the environment
variable ``GRAVTIME_DISABLE_JIT`` is set to a truthy value (or numba is not
importable), in which case the same source runs as ordinary Python over
numpy arrays. The flag is read once at import time.
"""
import os

_FLAG = os.environ.get("GRAVTIME_DISABLE_JIT", "").strip().lower()
DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    if DISABLED:
        raise ImportError
    import numba

    JIT_ENABLED = True
except ImportError:
    numba = None
    JIT_ENABLED = False


def njit(fn):
    """Compile ``fn`` with numba when enabled, else return it unchanged."""
    if JIT_ENABLED:
        return numba.njit(cache=True, fastmath=False)(fn)
    return fn
