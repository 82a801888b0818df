"""Periodic grids on one time layer and the four grid-evolution equations.

Node positions are stored unwrapped (they may drift outside the fundamental
interval); the array order realizes the computational coordinate, and the
periodic closure gap ``x[0] + L - x[-1]`` must stay positive. Wrapping into
the fundamental interval happens only on output.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import _backend
from .errors import NoConvergenceError, NodeCrossingError

TAU = 2.0 * np.pi


def _as_float_array(values) -> np.ndarray:
    a = np.asarray(values, dtype=float)
    if a.ndim != 1:
        raise ValueError(f"expected a 1-D array, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class GridSlice:
    """One time layer: a time value plus ordered node positions."""

    t: float
    x: np.ndarray
    domain_start: float = 0.0
    domain_length: float = TAU

    def __post_init__(self):
        object.__setattr__(self, "x", _as_float_array(self.x))
        n = len(self.x)
        if n < 4:
            raise ValueError(f"need at least 4 nodes, got {n}")
        if not np.isfinite(self.x).all() or not np.isfinite(self.t):
            raise ValueError("non-finite grid data")
        if self.domain_length <= 0.0:
            raise ValueError("domain_length must be positive")
        gaps = self.gaps()
        if np.any(gaps <= 0.0):
            raise ValueError("node positions must be strictly increasing "
                             "with a positive periodic closure gap")
        # structural identity; guards against corrupted closure bookkeeping
        if abs(gaps.sum() - self.domain_length) > 1e-12 * self.domain_length:
            raise ValueError("periodic gaps do not sum to the domain length")

    @property
    def n(self) -> int:
        return len(self.x)

    def gaps(self) -> np.ndarray:
        """Periodic gaps x_{i+1} - x_i, closing with x_0 + L - x_{N-1}."""
        g = np.empty(self.n)
        g[:-1] = np.diff(self.x)
        g[-1] = self.x[0] + self.domain_length - self.x[-1]
        return g

    def wrapped_x(self) -> np.ndarray:
        """Positions reduced into [domain_start, domain_start + L)."""
        return self.domain_start + np.mod(self.x - self.domain_start,
                                          self.domain_length)

    def neighbors(self) -> tuple[np.ndarray, np.ndarray]:
        """Unwrapped left/right neighbour positions (periodic +-L jumps)."""
        xp = np.roll(self.x, -1)
        xp[-1] += self.domain_length
        xm = np.roll(self.x, 1)
        xm[0] -= self.domain_length
        return xm, xp


def uniform_slice(n: int, t: float = 0.0, domain_start: float = 0.0,
                  domain_length: float = TAU) -> GridSlice:
    x = domain_start + np.arange(n) * (domain_length / n)
    return GridSlice(t=t, x=x, domain_start=domain_start,
                     domain_length=domain_length)


@dataclass(frozen=True)
class DiscreteField:
    """Nodal solution values attached to a grid slice."""

    grid: GridSlice
    u: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "u", _as_float_array(self.u))
        if len(self.u) != self.grid.n:
            raise ValueError(f"u has {len(self.u)} values for "
                             f"{self.grid.n} nodes")
        if not np.isfinite(self.u).all():
            raise ValueError("non-finite solution values")


@dataclass(frozen=True)
class MonitorParams:
    """Weight function parameters: rho = sqrt(1 + alpha * slope^2).

    ``unsquared_slope`` switches to the raw (signed) difference quotient
    inside the radicand; that form can go negative for steep descending
    data and exists only for comparison runs.
    """

    alpha: float = 1.0
    unsquared_slope: bool = False

    def __post_init__(self):
        if not np.isfinite(self.alpha) or self.alpha < 0.0:
            raise ValueError("alpha must be finite and >= 0")


@dataclass(frozen=True)
class RelaxationParams:
    """Stopping control for the equidistribution relaxation solver.

    ``tolerance`` is the max nodal displacement per sweep at which the
    iteration stops; ``omega`` overrides the auto-selected relaxation
    factor 2 / (1 + sin(pi/N)).
    """

    max_iters: int
    tolerance: float
    omega: float | None = None

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not self.tolerance > 0.0:
            raise ValueError("tolerance must be positive")
        if self.omega is not None and not 0.0 < self.omega < 2.0:
            raise ValueError("omega must lie in (0, 2)")


def default_relaxation(n: int, domain_length: float = TAU) -> RelaxationParams:
    return RelaxationParams(max_iters=10 * n, tolerance=1e-12 * domain_length)


def mean_spacing(grid: GridSlice) -> float:
    """Mean grid spacing L / N; independent of node distribution."""
    return grid.domain_length / grid.n


def advance_stationary(grid: GridSlice, dt: float) -> GridSlice:
    """Keep every node in place; only the layer time advances."""
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    return replace(grid, t=grid.t + dt)


def advance_lagrangian(grid: GridSlice, u: np.ndarray, dt: float) -> GridSlice:
    """Move every node with its local velocity: x_i += dt * u_i."""
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    u = _as_float_array(u)
    if len(u) != grid.n:
        raise ValueError("u length does not match the grid")
    x1 = grid.x + dt * u
    _require_ordered(x1, grid.domain_length,
                     "Lagrangian move inverted a mesh interval "
                     "(dt too large for the velocity gradient)")
    return replace(grid, t=grid.t + dt, x=x1)


def advance_constant(grid: GridSlice, c: float, dt: float) -> GridSlice:
    """Translate the whole grid rigidly: x_i += c * dt."""
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    return replace(grid, t=grid.t + dt, x=grid.x + c * dt)


def monitor(fld: DiscreteField, params: MonitorParams) -> np.ndarray:
    """Nodal monitor values from the periodic centered difference quotient."""
    xm, xp = fld.grid.neighbors()
    slope = (np.roll(fld.u, -1) - np.roll(fld.u, 1)) / (xp - xm)
    radicand = 1.0 + params.alpha * (slope if params.unsquared_slope
                                     else slope ** 2)
    if np.any(radicand < 0.0):
        raise ValueError("unsquared-slope monitor produced a negative "
                         "radicand; use the squared form")
    return np.sqrt(radicand)


def advance_equidistributed(fld: DiscreteField, params: MonitorParams,
                            relax: RelaxationParams, dt: float,
                            guess: np.ndarray | None = None) -> GridSlice:
    """Place the next grid layer by equidistributing the monitor.

    Solves (rho_{i+1}+rho_i)(x_{i+1}-x_i) = (rho_i+rho_{i-1})(x_i-x_{i-1})
    cyclically for the new positions, with the monitor lagged on the current
    layer. The singular cyclic system is closed by moving node 0
    Lagrangianly (x_0 += dt*u_0), which keeps the grid equation equivariant
    under boosts; a fixed anchor would not be.

    ``guess`` warm-starts the relaxation (a Lagrangian predictor is used
    when absent); it influences only the iteration count, not the result.
    """
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    rho = monitor(fld, params)
    grid = fld.grid
    anchor = grid.x[0] + dt * fld.u[0]
    if guess is None:
        guess = grid.x + dt * fld.u
    x1 = _solve_equidistribution(np.asarray(guess, dtype=float).copy(), rho,
                                 anchor, grid.domain_length, relax)
    _require_ordered(x1, grid.domain_length,
                     "equidistributed mesh violates node ordering")
    return replace(grid, t=grid.t + dt, x=x1)


def equidistribute_initial(initial, grid: GridSlice, params: MonitorParams,
                           relax: RelaxationParams,
                           max_rounds: int = 100) -> GridSlice:
    """Fixed-point equidistribution of the initial data at t = 0.

    Starting an adaptive run from a uniform mesh would shove the nodes to
    their equidistributed positions within the first step, injecting a
    remap error that does not vanish with resolution. Iterating
    mesh -> resample ``initial`` -> mesh before stepping removes it. Node 0
    stays at its current position (no time has elapsed, so the Lagrangian
    anchor degenerates to a fixed one).
    """
    x = grid.x
    for _ in range(max_rounds):
        fld = DiscreteField(grid=replace(grid, x=x), u=initial(x))
        rho = monitor(fld, params)
        x_new = _solve_equidistribution(x.copy(), rho, x[0],
                                        grid.domain_length, relax)
        change = float(np.max(np.abs(x_new - x)))
        x = x_new
        if change <= relax.tolerance:
            break
    else:
        raise NoConvergenceError(
            f"initial equidistribution did not settle in {max_rounds} rounds")
    _require_ordered(x, grid.domain_length,
                     "initial equidistribution violates node ordering")
    return replace(grid, x=x)


def equidistribution_residual(x: np.ndarray, rho: np.ndarray,
                              domain_length: float) -> np.ndarray:
    """Residual of the discrete equidistribution relation, per node."""
    xp = np.roll(x, -1).copy()
    xp[-1] += domain_length
    xm = np.roll(x, 1).copy()
    xm[0] -= domain_length
    rp = np.roll(rho, -1)
    rm = np.roll(rho, 1)
    return (rp + rho) * (xp - x) - (rho + rm) * (x - xm)


def _solve_equidistribution(x: np.ndarray, rho: np.ndarray, anchor: float,
                            domain_length: float, relax: RelaxationParams,
                            sweeps_fn=None) -> np.ndarray:
    """SOR relaxation of the anchored cyclic system; returns new positions.

    Convergence is declared when a sweep moves no node by more than the
    displacement tolerance AND the equidistribution residual is below
    tolerance * L * max(rho); the residual check guards against premature
    stops on non-monotone SOR transients.
    """
    if sweeps_fn is None:
        sweeps_fn = _backend.sor_sweeps
    n = len(rho)
    omega = relax.omega
    if omega is None:
        omega = 2.0 / (1.0 + np.sin(np.pi / n))
    east = (np.roll(rho, -1) + rho)[1:]
    west = (rho + np.roll(rho, 1))[1:]
    inv = 1.0 / (west + east)
    wn = np.ascontiguousarray(west * inv)
    en = np.ascontiguousarray(east * inv)
    y = x[1:].copy()
    res_cap = relax.tolerance * domain_length * float(np.max(rho))
    budget = relax.max_iters
    tol = relax.tolerance
    out = x.copy()
    out[0] = anchor
    while budget > 0:
        done, _ = sweeps_fn(y, wn, en, anchor, anchor + domain_length,
                            omega, tol, budget)
        budget -= done
        out[1:] = y
        res = equidistribution_residual(out, rho, domain_length)
        if float(np.max(np.abs(res))) <= res_cap:
            return out
        # non-monotone SOR transient: the displacement test fired early;
        # resume with a tighter displacement target so re-entries stay rare
        tol *= 0.25
    raise NoConvergenceError(
        f"mesh relaxation exhausted {relax.max_iters} sweeps "
        f"(tolerance {relax.tolerance:g})")


def _require_ordered(x: np.ndarray, domain_length: float, message: str):
    closure = x[0] + domain_length - x[-1]
    if np.any(np.diff(x) <= 0.0) or closure <= 0.0:
        raise NodeCrossingError(message)
