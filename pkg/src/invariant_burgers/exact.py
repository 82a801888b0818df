"""Closed-form series reference solution for the sine initial condition.

The solution is the log-derivative of a heat-kernel-smoothed positive
potential, expressed through Fourier cosine coefficients of
exp(-(1 - cos x)/(2 nu)). Coefficients are integrated with the composite
trapezoid rule, which is spectrally accurate for smooth periodic
integrands.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoDecayError, TruncationUnsafeError

TAU = 2.0 * np.pi

_M_START = 256
_M_CAP = 2 ** 20


@dataclass(frozen=True)
class FourierCoeffs:
    """Immutable coefficient table a_0..a_J for one viscosity."""

    nu: float
    a: np.ndarray
    quad_points: int
    tol: float
    t_min: float

    def __post_init__(self):
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float))
        if self.a[0] <= 0.0:
            raise ValueError("a_0 must be positive")
        # eventual monotone decay, judged above the quadrature noise floor
        tail = np.abs(self.a[len(self.a) // 2:])
        significant = tail[tail > 1e-13 * self.a[0]]
        if np.any(np.diff(significant) > 0.0):
            raise ValueError("stored coefficient tail is not decaying")

    @property
    def truncation_index(self) -> int:
        return len(self.a) - 1


def coefficients(nu: float, tol: float = 1e-12, t_min: float = 0.0,
                 j_cap: int = 200) -> FourierCoeffs:
    """Compute coefficients until the evaluation tail bound drops below tol.

    The truncation index J is the smallest j with
    |a_j| * j * exp(-nu * t_min * j^2) < tol * a_0; the number of quadrature
    points doubles until a_0 is stable to tol relative and the retained
    modes are safely below the aliasing range.
    """
    if not nu > 0.0:
        raise ValueError("nu must be positive")
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    m = _M_START
    a0_prev = None
    while m <= _M_CAP:
        x = np.arange(m) * (TAU / m)
        f = np.exp(-(1.0 - np.cos(x)) / (2.0 * nu))
        a0 = float(f.mean())
        j_hi = min(j_cap, m // 4)
        j = np.arange(1, j_hi + 1)
        a = 2.0 * (f[None, :] * np.cos(np.outer(j, x))).mean(axis=1)
        damp = j.astype(float) * np.exp(-nu * t_min * j.astype(float) ** 2)
        below = np.abs(a) * damp < tol * a0
        a0_stable = a0_prev is not None and abs(a0 - a0_prev) <= tol * a0
        if below.any() and a0_stable:
            J = int(j[np.argmax(below)])
            return FourierCoeffs(nu=nu, a=np.concatenate([[a0], a[:J]]),
                                 quad_points=m, tol=tol, t_min=t_min)
        if a0_stable and j_hi >= j_cap:
            raise NoDecayError(
                f"coefficients did not decay below tol={tol:g} within "
                f"j <= {j_cap} (nu={nu:g})")
        a0_prev = a0
        m *= 2
    raise NoDecayError(f"quadrature did not converge within {_M_CAP} points")


def evaluate(coeffs: FourierCoeffs, t: float, x) -> np.ndarray:
    """Reference solution at time t and position(s) x.

    The denominator is the smoothed potential, strictly positive; queries
    are reduced into the fundamental period first so the series arguments
    stay small.
    """
    if t < 0.0:
        raise ValueError("t must be nonnegative")
    a = coeffs.a
    J = coeffs.truncation_index
    if t < coeffs.t_min:
        tail = abs(a[J]) * max(J, 1) * np.exp(-coeffs.nu * t * J ** 2)
        if tail > coeffs.tol * a[0]:
            raise TruncationUnsafeError(
                f"truncation at J={J} unsafe for t={t:g} "
                f"(built for t >= {coeffs.t_min:g})")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    # symmetric reduction keeps series arguments small and makes the odd
    # symmetry of the solution exact (negation is exact in floating point)
    xr = np.atleast_1d(x)
    xr = xr - TAU * np.round(xr / TAU)
    j = np.arange(J + 1, dtype=float)
    damped = a * np.exp(-coeffs.nu * t * j ** 2)
    phase = np.outer(xr, j)
    num = 2.0 * coeffs.nu * np.sin(phase[:, 1:]) @ (damped[1:] * j[1:])
    den = np.cos(phase) @ damped
    out = num / den
    return float(out[0]) if scalar else out
