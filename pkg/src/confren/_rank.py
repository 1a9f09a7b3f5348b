"""Select the compiled rank kernel, falling back to pure Python."""

import os

from . import _rank_py

try:
    if os.environ.get("CONFREN_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _kernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _rank_py
    BACKEND = "python"

rank = _impl.rank
rank_python = _rank_py.rank

__all__ = ["rank", "rank_python", "BACKEND"]
