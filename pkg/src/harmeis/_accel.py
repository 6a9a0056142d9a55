"""Backend selection for the hot numeric kernels.

The lattice sums and scalar special functions are written so that they can be
compiled with ``numba.njit``.  Setting ``HARMEIS_BACKEND=numpy`` (or running
without numba installed) selects the pure numpy path instead: scalar helpers
run as plain Python and the lattice sums are evaluated with vectorized numpy.
"""
import os

_requested = os.environ.get("HARMEIS_BACKEND", "numba").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

USE_NUMBA = numba is not None and _requested != "numpy"
BACKEND = "numba" if USE_NUMBA else "numpy"


def jit(func):
    """``numba.njit(cache=True)`` when the numba backend is active, else identity."""
    if USE_NUMBA:
        return numba.njit(cache=True)(func)
    return func
