"""Kernel backend selection.

The hot per-pixel loops exist twice: a Cython extension
(``purimap._speedups``) and a numpy fallback (``purimap._kernels_py``)
with identical semantics.  The compiled one is used when importable;
set ``PURIMAP_PURE_PYTHON=1`` to force the fallback.  Both backends are
importable side by side for testing and benchmarking.
"""

from __future__ import annotations

import os

from . import _kernels_py

_speedups = None
if not os.environ.get("PURIMAP_PURE_PYTHON"):
    try:
        from . import _speedups  # type: ignore[no-redef]
    except ImportError:
        _speedups = None

active = _speedups if _speedups is not None else _kernels_py

LABEL_BELL = _kernels_py.LABEL_BELL
LABEL_SEPARABLE = _kernels_py.LABEL_SEPARABLE
LABEL_MIXED = _kernels_py.LABEL_MIXED
LABEL_UNRESOLVED = _kernels_py.LABEL_UNRESOLVED


def backend_name() -> str:
    """Name of the kernel backend in use: 'compiled' or 'python'."""
    return active.BACKEND_NAME


def available_backends() -> dict:
    """Importable kernel backends keyed by name."""
    out = {"python": _kernels_py}
    if _speedups is not None:
        out["compiled"] = _speedups
    return out


def classify_pure(zr, zi, max_iters, tol):
    return active.classify_pure(zr, zi, max_iters, tol)


def classify_mixed(zr, zi, lam, max_iters, tol, mixed_members=None):
    return active.classify_mixed(zr, zi, lam, max_iters, tol, mixed_members)
