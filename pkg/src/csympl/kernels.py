"""Kernel backend selection.

The compiled extension (`csympl._fastscatter`, Cython) is preferred when
available; otherwise the pure-numpy implementation is used.  Both expose
identical ``wedge_scatter`` / ``contract_scatter`` functions.  Set the
environment variable ``CSYMPL_PURE=1`` before import to force the pure
backend (used by the benchmark and for debugging).
"""

import os

from . import _scatter_py

if os.environ.get("CSYMPL_PURE"):
    _impl = _scatter_py
    BACKEND = "python"
else:
    try:
        from . import _fastscatter as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _scatter_py
        BACKEND = "python"

wedge_scatter = _impl.wedge_scatter
contract_scatter = _impl.contract_scatter
