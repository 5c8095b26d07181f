"""Select the compiled kernels when available.

Set ``COVKIT_PURE_PYTHON=1`` to force the pure-Python fallback.
"""
import os

from . import _kernels_py

if os.environ.get("COVKIT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

rref_int = _impl.rref_int
poly_mul = _impl.poly_mul
