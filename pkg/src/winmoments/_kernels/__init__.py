"""Kernel backend selection.

The compiled Cython kernels are used when the extension was built;
otherwise the NumPy fallbacks take over. Set WINMOMENTS_BACKEND=py or
WINMOMENTS_BACKEND=cy to force a backend (cy raises if unavailable).
"""

from __future__ import annotations

import os

from . import _py

_requested = os.environ.get("WINMOMENTS_BACKEND", "").strip().lower()

if _requested == "py":
    _impl = _py
elif _requested == "cy":
    from . import _cy as _impl
elif _requested == "":
    try:
        from . import _cy as _impl
    except ImportError:
        _impl = _py
else:
    raise ImportError(f"unknown WINMOMENTS_BACKEND value: {_requested!r} (use 'py' or 'cy')")

BACKEND: str = "py" if _impl is _py else "cy"

summarize = _impl.summarize
first_violation = _impl.first_violation
