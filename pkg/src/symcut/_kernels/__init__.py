"""Hot kernels, compiled when available.

Set ``SYMCUT_PURE_PYTHON=1`` to force the pure-Python implementation.
"""
import os

from . import _alloc_py

if os.environ.get("SYMCUT_PURE_PYTHON"):
    _alloc_c = None
else:
    try:
        from . import _alloc_c
    except ImportError:  # extension not built
        _alloc_c = None

if _alloc_c is not None:
    enumerate_allocations = _alloc_c.enumerate_allocations
    BACKEND = "cython"
else:
    enumerate_allocations = _alloc_py.enumerate_allocations
    BACKEND = "python"

__all__ = ["enumerate_allocations", "BACKEND", "_alloc_py", "_alloc_c"]
