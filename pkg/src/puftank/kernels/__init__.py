"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python
twin is always available and is forced by setting PUFTANK_PURE=1.
Both produce bit-identical results (covered by the equivalence tests),
so selection only affects speed.
"""

from __future__ import annotations

import os

from . import pure as _pure

pure_thd_regions = _pure.thd_regions

compiled_thd_regions = None
if os.environ.get("PUFTANK_PURE") != "1":
    try:
        from . import _thd as _ext
    except ImportError:
        _ext = None
    if _ext is not None:
        compiled_thd_regions = _ext.thd_regions

if compiled_thd_regions is not None:
    thd_regions = compiled_thd_regions
    BACKEND = "compiled"
else:
    thd_regions = pure_thd_regions
    BACKEND = "pure"


def backend_name() -> str:
    return BACKEND
