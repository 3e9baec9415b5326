"""Kernel backend selection.

The compiled Cython module is preferred when it built successfully; the
pure-Python module is the always-available fallback with identical
behavior.  ``BACKEND`` records which one is live so tests and the
benchmark can report it.  Set ``TRACESIM_PURE_PYTHON=1`` to force the
fallback even when the extension is present.
"""

import os

_impl = None
if not os.environ.get("TRACESIM_PURE_PYTHON"):
    try:
        from . import _speedups as _impl

        BACKEND = "compiled"
    except ImportError:  # extension not built
        _impl = None
if _impl is None:
    from . import _py as _impl

    BACKEND = "python"

echelon_int = _impl.echelon_int
det_int = _impl.det_int
min_rotation = _impl.min_rotation

__all__ = ["BACKEND", "echelon_int", "det_int", "min_rotation"]
