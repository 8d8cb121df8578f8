"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module is used.  Setting ``QCX_KERNELS=python``
forces the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels as py

ck = None
if os.environ.get("QCX_KERNELS", "").lower() != "python":
    try:
        from . import _ckernels as ck
    except ImportError:  # extension not built
        ck = None

BACKEND = ck.BACKEND if ck is not None else py.BACKEND

__all__ = ["py", "ck", "BACKEND"]
