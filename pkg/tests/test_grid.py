import math

import numpy as np
import pytest

from invariant_burgers import (
    DiscreteField, Generator, GridSlice, GroupElement, MonitorParams,
    NoConvergenceError, NodeCrossingError, RelaxationParams, TAU,
    advance_constant, advance_equidistributed, advance_lagrangian,
    advance_stationary, apply_field, default_relaxation,
    equidistribute_initial, mean_spacing, monitor, transform_monitor,
    uniform_slice,
)
from invariant_burgers.grid import equidistribution_residual

from oracles import (dense_equidistribution_solve, monitor_loop,
                     random_smooth_field)


def sin_field(n=64, amplitude=1.0):
    grid = uniform_slice(n)
    return DiscreteField(grid=grid, u=amplitude * np.sin(grid.x))


# ---------------------------------------------------------------------------
# grid slice basics
# ---------------------------------------------------------------------------

def test_uniform_slice_gap_sum():
    grid = uniform_slice(64)
    assert abs(grid.gaps().sum() - TAU) <= 1e-12 * TAU


def test_mean_spacing():
    assert mean_spacing(uniform_slice(64)) == pytest.approx(TAU / 64, abs=0)
    grid = uniform_slice(4, domain_length=4.0)
    assert mean_spacing(grid) == 1.0


def test_mean_spacing_ignores_node_distribution():
    grid = uniform_slice(16)
    skewed = GridSlice(t=0.0, x=grid.x + 0.3 * np.sin(grid.x))
    assert mean_spacing(skewed) == mean_spacing(grid)


def test_grid_slice_validation():
    with pytest.raises(ValueError):
        GridSlice(t=0.0, x=np.array([0.0, 1.0, 2.0]))  # too few nodes
    with pytest.raises(ValueError):
        GridSlice(t=0.0, x=np.array([0.0, 2.0, 1.0, 3.0]))  # not increasing
    with pytest.raises(ValueError):
        GridSlice(t=0.0, x=np.array([0.0, 1.0, 2.0, TAU + 1.0]))  # closure


def test_wrapped_positions_stay_in_fundamental_interval():
    grid = uniform_slice(8)
    drifted = GridSlice(t=0.0, x=grid.x + 3.7 * TAU)
    w = drifted.wrapped_x()
    assert np.all((w >= 0.0) & (w < TAU))


# ---------------------------------------------------------------------------
# stationary / lagrangian / constant advances
# ---------------------------------------------------------------------------

def test_advance_stationary_keeps_positions():
    grid = uniform_slice(64)
    out = advance_stationary(grid, 0.01)
    assert out.t == pytest.approx(0.01, abs=0)
    np.testing.assert_array_equal(out.x, grid.x)


def test_advance_stationary_rejects_degenerate_step():
    with pytest.raises(ValueError):
        advance_stationary(uniform_slice(8), 0.0)


def test_advance_lagrangian_zero_velocity():
    grid = uniform_slice(16)
    out = advance_lagrangian(grid, np.zeros(16), 0.05)
    np.testing.assert_array_equal(out.x, grid.x)
    assert out.t == pytest.approx(0.05)


def test_advance_lagrangian_rigid_motion_preserves_gaps():
    grid = uniform_slice(16)
    out = advance_lagrangian(grid, np.full(16, 0.7), 0.1)
    np.testing.assert_allclose(out.x, grid.x + 0.1 * 0.7, rtol=0, atol=0)
    np.testing.assert_allclose(out.gaps(), grid.gaps(), rtol=0, atol=5e-15)


def test_advance_lagrangian_matches_formula():
    # independent elementwise evaluation of the node-motion rule
    grid = uniform_slice(8)
    u = np.sin(grid.x)
    out = advance_lagrangian(grid, u, 0.1)
    expected = [grid.x[i] + 0.1 * math.sin(grid.x[i]) for i in range(8)]
    np.testing.assert_allclose(out.x, expected, rtol=0, atol=1e-16)


def test_advance_lagrangian_detects_node_crossing():
    grid = uniform_slice(8)
    u = np.zeros(8)
    u[3] = -2.0 * mean_spacing(grid)  # node 3 would overtake node 2
    with pytest.raises(NodeCrossingError):
        advance_lagrangian(grid, u, 1.0)


def test_advance_constant_zero_velocity_is_stationary():
    grid = uniform_slice(12)
    np.testing.assert_array_equal(advance_constant(grid, 0.0, 0.01).x,
                                  advance_stationary(grid, 0.01).x)


def test_advance_constant_shifts_every_node():
    grid = uniform_slice(12)
    out = advance_constant(grid, 1.0, 0.01)
    np.testing.assert_allclose(out.x - grid.x, 0.01, rtol=0, atol=1e-14)


def test_gap_sum_preserved_by_advances():
    fld = sin_field(32)
    relax = default_relaxation(32)
    for out in (
        advance_stationary(fld.grid, 0.01),
        advance_lagrangian(fld.grid, fld.u, 0.01),
        advance_constant(fld.grid, 1.3, 0.01),
        advance_equidistributed(fld, MonitorParams(alpha=1.0), relax, 0.01),
    ):
        assert abs(out.gaps().sum() - TAU) <= 1e-12 * TAU


# ---------------------------------------------------------------------------
# monitor
# ---------------------------------------------------------------------------

def test_monitor_is_one_for_zero_alpha():
    np.testing.assert_array_equal(
        monitor(sin_field(64), MonitorParams(alpha=0.0)), np.ones(64))


def test_monitor_is_one_for_constant_state():
    grid = uniform_slice(32)
    fld = DiscreteField(grid=grid, u=np.full(32, 5.0))
    np.testing.assert_array_equal(monitor(fld, MonitorParams(alpha=1.0)),
                                  np.ones(32))


def test_monitor_closed_form_at_origin():
    # centered quotient of sin at x=0 on a uniform grid is sin(h)/h
    fld = sin_field(64)
    h = mean_spacing(fld.grid)
    rho = monitor(fld, MonitorParams(alpha=1.0))
    expected = math.sqrt(1.0 + (math.sin(h) / h) ** 2)
    assert rho[0] == pytest.approx(expected, abs=1e-14)


def test_monitor_matches_loop_oracle():
    rng = np.random.default_rng(42)
    x, u = random_smooth_field(rng, 24)
    fld = DiscreteField(grid=GridSlice(t=0.0, x=x - x[0]), u=u)
    rho = monitor(fld, MonitorParams(alpha=0.7))
    np.testing.assert_allclose(
        rho, monitor_loop(fld.grid.x, u, 0.7, TAU), rtol=0, atol=1e-14)


def test_monitor_at_least_one():
    rng = np.random.default_rng(3)
    x, u = random_smooth_field(rng, 40)
    fld = DiscreteField(grid=GridSlice(t=0.0, x=x - x[0]), u=u)
    assert np.all(monitor(fld, MonitorParams(alpha=2.0)) >= 1.0)


def test_monitor_unsquared_slope_variant():
    fld = sin_field(64, amplitude=0.5)  # slopes stay above -1
    rho = monitor(fld, MonitorParams(alpha=1.0, unsquared_slope=True))
    h = mean_spacing(fld.grid)
    assert rho[0] == pytest.approx(math.sqrt(1.0 + 0.5 * math.sin(h) / h),
                                   abs=1e-14)
    with pytest.raises(ValueError):
        monitor(sin_field(64, amplitude=3.0),
                MonitorParams(alpha=1.0, unsquared_slope=True))


# ---------------------------------------------------------------------------
# equidistribution
# ---------------------------------------------------------------------------

def test_equidistributed_constant_monitor_gives_uniform_gaps():
    fld = sin_field(32)
    out = advance_equidistributed(fld, MonitorParams(alpha=0.0),
                                  default_relaxation(32), 0.01)
    # uniform up to the relaxation tolerance of the mesh solver
    np.testing.assert_allclose(out.gaps(), TAU / 32, rtol=0, atol=1e-9)


def test_equidistributed_matches_dense_solve():
    rng = np.random.default_rng(7)
    relax = RelaxationParams(max_iters=3200, tolerance=1e-13 * TAU)
    for _ in range(10):
        x, u = random_smooth_field(rng, 32)
        fld = DiscreteField(grid=GridSlice(t=0.0, x=x - x[0] + 0.2), u=u)
        dt = 1e-3
        out = advance_equidistributed(fld, MonitorParams(alpha=1.0), relax, dt)
        rho = monitor(fld, MonitorParams(alpha=1.0))
        ref = dense_equidistribution_solve(rho, fld.grid.x[0] + dt * u[0], TAU)
        assert np.max(np.abs(out.x - ref)) <= 1e-10


def test_equidistributed_products_are_equal():
    fld = sin_field(64)
    params = MonitorParams(alpha=1.0)
    relax = default_relaxation(64)
    out = advance_equidistributed(fld, params, relax, 0.005)
    rho = monitor(fld, params)
    res = equidistribution_residual(out.x, rho, TAU)
    res_cap = relax.tolerance * TAU * rho.max()
    assert np.max(np.abs(res)) <= res_cap
    # equivalent statement: monitor-weighted gaps agree across cells
    xp = np.roll(out.x, -1)
    xp[-1] += TAU
    products = (np.roll(rho, -1) + rho) * (xp - out.x)
    assert products.max() - products.min() <= 64 * res_cap


def test_equidistributed_anchor_is_lagrangian():
    fld = sin_field(32)
    dt = 0.01
    out = advance_equidistributed(fld, MonitorParams(alpha=1.0),
                                  default_relaxation(32), dt)
    assert out.x[0] == pytest.approx(fld.grid.x[0] + dt * fld.u[0], abs=0)


def test_equidistributed_no_convergence_error():
    fld = sin_field(64)
    starving = RelaxationParams(max_iters=2, tolerance=1e-15 * TAU)
    with pytest.raises(NoConvergenceError):
        advance_equidistributed(fld, MonitorParams(alpha=1.0), starving, 0.01)


def test_equidistribute_initial_concentrates_where_slope_is_steep():
    grid = uniform_slice(64)
    out = equidistribute_initial(np.sin, grid, MonitorParams(alpha=1.0),
                                 default_relaxation(64))
    gaps = out.gaps()
    # arc-length monitor of sin is largest where |cos| is largest (x=0, pi)
    assert gaps.min() < gaps.mean() < gaps.max()
    assert min(out.wrapped_x()[np.argmin(gaps)] % math.pi,
               math.pi - out.wrapped_x()[np.argmin(gaps)] % math.pi) < 0.5


# ---------------------------------------------------------------------------
# symmetry interplay
# ---------------------------------------------------------------------------

def test_lagrangian_advance_commutes_with_boost_exactly():
    fld = sin_field(32)
    dt = 0.02
    boost = GroupElement(Generator.GALILEAN_BOOST, 1.5)
    moved = advance_lagrangian(fld.grid, fld.u, dt)
    direct = DiscreteField(grid=moved, u=fld.u)  # carry values for transform
    transformed_after = apply_field(boost, direct)

    boosted = apply_field(boost, fld)
    moved_boosted = advance_lagrangian(boosted.grid, boosted.u, dt)
    np.testing.assert_allclose(moved_boosted.x, transformed_after.grid.x,
                               rtol=0, atol=1e-12)


def test_equidistributed_advance_commutes_with_boost():
    fld = sin_field(48)
    dt = 0.01
    params = MonitorParams(alpha=1.0)
    relax = default_relaxation(48)
    boost = GroupElement(Generator.GALILEAN_BOOST, 1.0)

    rest = advance_equidistributed(fld, params, relax, dt)
    boosted_in = apply_field(boost, fld)
    boosted_out = advance_equidistributed(boosted_in, params, relax, dt)
    # the boosted mesh should be the rest mesh shifted by eps*(t+dt)
    np.testing.assert_allclose(boosted_out.x, rest.x + 1.0 * dt,
                               rtol=0, atol=1e-10)


def test_monitor_invariant_under_boost():
    fld = sin_field(64)
    params = MonitorParams(alpha=1.0)
    boosted = apply_field(GroupElement(Generator.GALILEAN_BOOST, 2.0), fld)
    np.testing.assert_allclose(monitor(boosted, params), monitor(fld, params),
                               rtol=0, atol=1e-13)


@pytest.mark.parametrize("unsquared", [False, True])
def test_monitor_scaling_equivalence_extension(unsquared):
    amplitude = 0.5 if unsquared else 1.0
    fld = sin_field(64, amplitude=amplitude)
    params = MonitorParams(alpha=1.0, unsquared_slope=unsquared)
    g = GroupElement(Generator.SCALING, 0.4, extend_alpha=True)
    scaled = apply_field(g, fld)
    np.testing.assert_allclose(
        monitor(scaled, transform_monitor(g, params)),
        monitor(fld, params), rtol=0, atol=1e-12)
