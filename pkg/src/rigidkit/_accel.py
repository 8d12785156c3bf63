"""numba availability switch.

Set ``RIGIDKIT_NO_NUMBA=1`` to force the pure-numpy kernels even when numba
is installed.
"""

import os

_disabled = os.environ.get("RIGIDKIT_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError("disabled by RIGIDKIT_NO_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f
