"""Kernel backend selection: numba-jitted kernels with a pure-numpy fallback.

Hot inner loops (grid accumulation, fiber hit scans, counter-based hashing)
exist in two implementations that produce bitwise identical results.  The
active backend is chosen at import time from the ``RANDCOVER_BACKEND``
environment variable:

* ``RANDCOVER_BACKEND=numba`` - require the jitted kernels (raises if numba
  is missing),
* ``RANDCOVER_BACKEND=numpy`` - force the pure-numpy path,
* unset - use numba when importable, numpy otherwise.

``benchmarks/bench_backends.py`` compares the two paths.
"""

import os

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        """No-op decorator stand-in so kernel definitions still import."""

        def wrap(func):
            return func

        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return wrap


_requested = os.environ.get("RANDCOVER_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(
        f"RANDCOVER_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )
if _requested == "numba" and not HAVE_NUMBA:
    raise RuntimeError("RANDCOVER_BACKEND=numba but numba is not importable")

#: Name of the active backend; tests flip this to exercise both paths.
active_backend = _requested or ("numba" if HAVE_NUMBA else "numpy")


def use_numba() -> bool:
    """True when dispatch should go to the jitted kernels."""
    return active_backend == "numba" and HAVE_NUMBA
