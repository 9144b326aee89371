"""Backend selection for the per-step kernels.

The compiled extension (poissonchain._core, Cython) is preferred; the numpy
implementation (poissonchain._core_py) is the fallback. Set
POISSONCHAIN_KERNEL=python or =cython to force one; "cython" raises if the
extension is missing.
"""

from __future__ import annotations

import os


def load(name: str | None = None):
    name = name or os.environ.get("POISSONCHAIN_KERNEL", "auto")
    if name not in ("auto", "cython", "python"):
        raise ValueError(f"unknown kernel backend {name!r}")
    if name in ("auto", "cython"):
        try:
            from . import _core
            return _core
        except ImportError:
            if name == "cython":
                raise
    from . import _core_py
    return _core_py


kernel = load()


def active_backend() -> str:
    return kernel.BACKEND
