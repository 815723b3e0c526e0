"""Kernel backend selection.

The compiled Cython kernels are used when the extension is importable;
otherwise, or when ``CMRADAR_BACKEND=python`` is set, the numpy fallback
with the same call signatures is used.
"""

from __future__ import annotations

import os

from cmradar import _pykernels

_requested = os.environ.get("CMRADAR_BACKEND", "auto").lower()

if _requested == "python":
    _impl = _pykernels
else:
    try:
        from cmradar import _kernels as _impl
    except ImportError:
        if _requested == "cython":
            raise
        _impl = _pykernels

NAME = "cython" if _impl is not _pykernels else "python"

project = _impl.project
agp_loop = _impl.agp_loop
power_iteration = _impl.power_iteration


def get(name: str):
    """Return the kernel module for ``name`` ('python' or 'cython')."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from cmradar import _kernels

        return _kernels
    raise ValueError(f"unknown backend {name!r}")
