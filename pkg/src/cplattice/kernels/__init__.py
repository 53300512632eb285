"""Hot-loop row kernels: compiled extension when available, NumPy otherwise.

Set CPLATTICE_FORCE_NUMPY_KERNELS=1 to skip the extension (used by the
benchmark and by tests that exercise the fallback).
"""
from __future__ import annotations

import os

from . import _numpy_backend

if os.environ.get("CPLATTICE_FORCE_NUMPY_KERNELS"):
    _impl = _numpy_backend
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _numpy_backend

res_row_zz = _impl.res_row_zz
res_row_zx = _impl.res_row_zx


def backend_name() -> str:
    return "cython" if _impl is not _numpy_backend else "numpy"
