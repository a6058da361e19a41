"""Backend selection for the elimination kernel.

The compiled module is used when it imports; setting ``M3LINK_PURE_PYTHON=1``
forces the reference implementation.
"""

import os

from . import _elim_py

BACKEND = "python"
_impl = _elim_py

if not os.environ.get("M3LINK_PURE_PYTHON"):
    try:
        from . import _elim_c as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        _impl = _elim_py

eliminate = _impl.eliminate
replay_rows = _impl.replay_rows
replay_rows_inverse = _impl.replay_rows_inverse
replay_cols = _impl.replay_cols


def backends():
    """Return ``{name: module}`` for every importable backend."""
    out = {"python": _elim_py}
    try:
        from . import _elim_c
        out["cython"] = _elim_c
    except ImportError:
        pass
    return out
