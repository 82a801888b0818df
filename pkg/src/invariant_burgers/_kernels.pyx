# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernel: SOR sweeps for the adaptive-mesh linear system.

The sweep is inherently sequential (each node update uses the freshly
updated left neighbour), which is why it is compiled instead of vectorized.
"""


def sor_sweeps(double[::1] y, double[::1] wn, double[::1] en,
               double left_bc, double right_bc,
               double omega, double tol, long max_sweeps):
    """Relax ``y`` in place toward the weighted-mean fixed point.

    ``y`` holds the interior unknowns; ``left_bc``/``right_bc`` are the
    fixed boundary values; ``wn``/``en`` are the left/right coupling
    weights, pre-normalized so that wn[i] + en[i] == 1. Sweeps stop once
    the max nodal displacement of a full sweep drops to ``tol``.
    Returns ``(sweeps_done, last_max_disp)``.
    """
    cdef Py_ssize_t m = y.shape[0]
    cdef Py_ssize_t i
    cdef long sweep
    cdef double left, right, disp, max_disp
    max_disp = 0.0
    for sweep in range(max_sweeps):
        max_disp = 0.0
        left = left_bc
        for i in range(m):
            right = right_bc if i == m - 1 else y[i + 1]
            disp = omega * (wn[i] * left + en[i] * right - y[i])
            y[i] = y[i] + disp
            if disp < 0.0:
                disp = -disp
            if disp > max_disp:
                max_disp = disp
            left = y[i]
        if max_disp <= tol:
            return sweep + 1, max_disp
    return max_sweeps, max_disp
