"""Backend selection for the search kernels.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module is used. ``BKGRAPH_PURE=1`` forces the
pure-Python backend.
"""

import os

from bkgraph import _pykernels

if os.environ.get("BKGRAPH_PURE"):
    _impl = _pykernels
else:
    try:
        from bkgraph import _kernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "compiled" if _impl is not _pykernels else "python"

FOUND = _pykernels.FOUND
INFEASIBLE = _pykernels.INFEASIBLE
TIMEOUT = _pykernels.TIMEOUT

max_clique = _impl.max_clique
color_search = _impl.color_search
find_induced = _impl.find_induced
canonical_code = _impl.canonical_code
