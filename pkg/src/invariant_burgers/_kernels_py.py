"""Pure-numpy fallback for the compiled relaxation kernel.

A strict left-to-right sweep cannot be vectorized, so this variant relaxes
the odd/even node colourings alternately (red-black ordering). Both
orderings converge to the same fixed point of the linear system; only the
iteration path differs.
"""

from __future__ import annotations

import numpy as np


def sor_sweeps(y, wn, en, left_bc, right_bc, omega, tol, max_sweeps):
    """Drop-in replacement for ``_kernels.sor_sweeps`` (same contract)."""
    m = len(y)
    p = np.empty(m + 2)
    p[0] = left_bc
    p[-1] = right_bc
    p[1:-1] = y
    wn = np.asarray(wn)
    en = np.asarray(en)
    red = np.arange(1, m + 1, 2)
    black = np.arange(2, m + 1, 2)
    sweeps = 0
    max_disp = 0.0
    while sweeps < max_sweeps:
        sweeps += 1
        max_disp = 0.0
        for idx in (red, black):
            if idx.size == 0:
                continue
            disp = omega * (wn[idx - 1] * p[idx - 1]
                            + en[idx - 1] * p[idx + 1] - p[idx])
            p[idx] += disp
            max_disp = max(max_disp, float(np.max(np.abs(disp))))
        if max_disp <= tol:
            break
    y[:] = p[1:-1]
    return sweeps, max_disp
