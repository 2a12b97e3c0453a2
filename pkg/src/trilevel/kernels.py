"""Backend selection for the hot kernels.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``TRILEVEL_PURE_PYTHON`` is set to a non-empty value
other than ``0``, the numpy implementation is used.
"""
import os

from . import _kernels_py

BACKEND = "python"
density_series = _kernels_py.density_series

if os.environ.get("TRILEVEL_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        density_series = _kernels.density_series

__all__ = ["BACKEND", "density_series"]
