"""Optional numba acceleration.

Set ``VKLINK_DISABLE_JIT=1`` to force the pure-numpy kernels (useful for
debugging, or where numba is unavailable).
"""

import os

JIT_REQUESTED = os.environ.get("VKLINK_DISABLE_JIT", "0").lower() in ("", "0", "false", "no")

try:
    if not JIT_REQUESTED:
        raise ImportError
    from numba import njit
    JIT_ENABLED = True
except ImportError:
    JIT_ENABLED = False

    def njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrapper(f):
            return f

        return wrapper
