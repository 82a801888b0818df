"""Kernel backend selection: compiled extension if available, numpy otherwise."""

from __future__ import annotations

try:
    from ._kernels import sor_sweeps

    COMPILED = True
except ImportError:  # extension not built; pure-Python fallback
    from ._kernels_py import sor_sweeps

    COMPILED = False

__all__ = ["sor_sweeps", "COMPILED", "backend_name"]


def backend_name() -> str:
    return "compiled" if COMPILED else "python"
