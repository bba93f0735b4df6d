import numpy as np
import pytest

from auxiliaries.units import dbm_to_watt
from network import find_resonance
from qdot import DriveSpec, SpinState, effective_quantum_capacitance
from steady_state import (
    SolverConfig,
    SolverError,
    hysteresis_scan,
    power_sweep,
    power_sweep_grid,
    solve_frequency_grid,
    solve_operating_point,
)


@pytest.fixture(scope="module")
def f_t(resonator, dqd):
    return find_resonance(resonator, dqd.c_geo, dqd.c_geo)


@pytest.fixture(scope="module")
def f_s(resonator, dqd):
    return find_resonance(resonator, dqd.c_geo, dqd.c_geo + dqd.small_signal_capacitance)


def shift_at(dqd, resonator, solver_config, f_s, p_dbm):
    point = solve_operating_point(
        dqd, resonator, SpinState.SINGLET_GROUND, f_s, dbm_to_watt(p_dbm), solver_config
    )
    return find_resonance(resonator, dqd.c_geo, dqd.c_geo) - find_resonance(
        resonator, dqd.c_geo, dqd.c_geo + point.c_q_eff
    )


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(relaxation=0.0)
    with pytest.raises(ValueError):
        SolverConfig(rel_tol=0.0)
    with pytest.raises(ValueError):
        SolverConfig(max_iter=0)


def test_low_power_keeps_small_signal_capacitance(dqd, resonator, solver_config, f_s):
    point = solve_operating_point(
        dqd, resonator, SpinState.SINGLET_GROUND, f_s, dbm_to_watt(-140.0), solver_config
    )
    assert point.converged
    assert point.c_q_eff == pytest.approx(dqd.small_signal_capacitance, rel=1e-3)


def test_operating_point_is_self_consistent(dqd, resonator, solver_config, f_s):
    point = solve_operating_point(
        dqd, resonator, SpinState.SINGLET_GROUND, f_s, dbm_to_watt(-100.0), solver_config
    )
    assert point.converged
    average = effective_quantum_capacitance(dqd, DriveSpec(abs(point.v_node), f_s))
    assert point.c_q_eff == pytest.approx(average, rel=1e-5)
    assert point.c_q_eff < dqd.small_signal_capacitance


def test_triplet_needs_a_single_linear_solve(dqd, resonator, solver_config, f_t):
    point = solve_operating_point(
        dqd, resonator, SpinState.TRIPLET_MINUS, f_t, dbm_to_watt(-95.0), solver_config
    )
    assert point.c_q_eff == 0.0
    assert point.iterations == 1
    assert point.converged


def test_excited_singlet_pulls_resonance_up(dqd, resonator, solver_config, f_t):
    point = solve_operating_point(
        dqd, resonator, SpinState.SINGLET_EXCITED, f_t, dbm_to_watt(-140.0), solver_config
    )
    assert point.c_q_eff == pytest.approx(-dqd.small_signal_capacitance, rel=1e-3)


def test_iteration_cap_flags_point(dqd, resonator, f_s):
    point = solve_operating_point(
        dqd, resonator, SpinState.SINGLET_GROUND, f_s, dbm_to_watt(-100.0), SolverConfig(max_iter=1)
    )
    assert not point.converged
    assert point.iterations == 1


def test_grid_matches_single_points(dqd, resonator, solver_config, f_s):
    frequencies = f_s + np.array([-2e6, 0.0, 2e6])
    p_rf = dbm_to_watt(-105.0)
    grid = solve_frequency_grid(
        dqd, resonator, SpinState.SINGLET_GROUND, frequencies, p_rf, solver_config
    )
    assert len(grid) == 3
    for index, f in enumerate(frequencies):
        point = solve_operating_point(dqd, resonator, SpinState.SINGLET_GROUND, f, p_rf, solver_config)
        assert grid.point(index).c_q_eff == pytest.approx(point.c_q_eff, rel=1e-5)
        assert grid.point(index).s21 == pytest.approx(point.s21, rel=1e-5)


def test_warm_start_reaches_same_point(dqd, resonator, solver_config, f_s):
    p_rf = dbm_to_watt(-100.0)
    cold = solve_operating_point(dqd, resonator, SpinState.SINGLET_GROUND, f_s, p_rf, solver_config)
    warm = solve_operating_point(
        dqd, resonator, SpinState.SINGLET_GROUND, f_s, p_rf, solver_config, warm_start=0.5 * cold.c_q_eff
    )
    assert warm.c_q_eff == pytest.approx(cold.c_q_eff, rel=1e-5)


def test_power_validation(dqd, resonator, solver_config, f_s):
    with pytest.raises(SolverError):
        solve_operating_point(dqd, resonator, SpinState.SINGLET_GROUND, f_s, -1e-15, solver_config)
    with pytest.raises(SolverError):
        power_sweep(dqd, resonator, SpinState.SINGLET_GROUND, f_s, [1e-15, 1e-16], solver_config)
    with pytest.raises(SolverError):
        power_sweep(dqd, resonator, SpinState.SINGLET_GROUND, f_s, [], solver_config)


def test_capacitance_falls_along_ascending_power(dqd, resonator, solver_config, f_s):
    powers = dbm_to_watt(np.arange(-140.0, -55.0, 5.0))
    points = power_sweep(dqd, resonator, SpinState.SINGLET_GROUND, f_s, powers, solver_config)
    values = np.array([p.c_q_eff for p in points])
    assert all(p.converged for p in points)
    assert np.all(np.diff(values) <= 1e-6 * dqd.small_signal_capacitance)


def test_low_power_frequency_shift(dqd, resonator, solver_config, f_s):
    shift = shift_at(dqd, resonator, solver_config, f_s, -140.0)
    assert 4e6 <= shift <= 6e6


def test_frequency_shift_collapses_with_power(dqd, resonator, solver_config, f_s):
    shifts = [shift_at(dqd, resonator, solver_config, f_s, p) for p in np.arange(-140.0, -55.0, 5.0)]
    assert np.all(np.diff(shifts) <= 1e3)
    assert shifts[-1] < 0.5e6


def test_power_sweep_grid_shapes(dqd, resonator, solver_config, f_t):
    frequencies = f_t + np.linspace(-5e6, 1e6, 4)
    powers = dbm_to_watt([-130.0, -110.0, -90.0])
    grids = power_sweep_grid(dqd, resonator, SpinState.SINGLET_GROUND, frequencies, powers, solver_config)
    assert len(grids) == 3
    assert all(grid.c_q_eff.shape == (4,) for grid in grids)
    assert [grid.p_rf for grid in grids] == pytest.approx(list(powers))


def test_static_detuning_lowers_capacitance(dqd, resonator, solver_config, f_t):
    p_rf = dbm_to_watt(-130.0)
    centred = solve_operating_point(dqd, resonator, SpinState.SINGLET_GROUND, f_t, p_rf, solver_config)
    offset = solve_operating_point(
        dqd, resonator, SpinState.SINGLET_GROUND, f_t, p_rf, solver_config,
        detuning_offset=2.0 * dqd.tunnel_coupling,
    )
    assert offset.converged
    assert offset.c_q_eff == pytest.approx(2.0**-1.5 * centred.c_q_eff, rel=1e-2)


def test_hysteresis_scan_reports_per_point_mask(dqd, resonator, solver_config, f_s):
    frequencies = f_s + np.array([-1e6, 0.0, 1e6])
    powers = dbm_to_watt([-120.0, -100.0, -90.0])
    scan = hysteresis_scan(dqd, resonator, SpinState.SINGLET_GROUND, frequencies, powers, solver_config)
    assert scan.disagreement.shape == (3, 3)
    assert len(scan.up) == len(scan.down) == 3
    # Small-signal end is single valued
    assert not scan.disagreement[0].any()
    assert [grid.p_rf for grid in scan.down] == pytest.approx(list(powers))


def test_descending_sweep_retraces_ascending_sweep(dqd, resonator, solver_config, f_s):
    # Below the |S> resonance the capacitance only moves the resonance away from the drive
    tight = SolverConfig(rel_tol=1e-10, max_iter=400)
    frequencies = f_s + np.array([-2e6, 0.0])
    powers = dbm_to_watt(np.arange(-140.0, -85.0, 10.0))
    tolerance = solver_config.rel_tol * dqd.small_signal_capacitance
    scan = hysteresis_scan(
        dqd, resonator, SpinState.SINGLET_GROUND, frequencies, powers, tight, threshold=tolerance
    )
    assert all(grid.converged.all() for grid in scan.up + scan.down)
    up = np.array([grid.c_q_eff for grid in scan.up])
    down = np.array([grid.c_q_eff for grid in scan.down])
    assert np.all(np.abs(up - down) <= tolerance)
    assert not scan.bistable


def test_continuation_is_reproducible(dqd, resonator, solver_config, f_t):
    frequencies = f_t + np.linspace(-6e6, 1e6, 8)
    powers = dbm_to_watt(np.arange(-130.0, -75.0, 10.0))
    first = power_sweep_grid(dqd, resonator, SpinState.SINGLET_GROUND, frequencies, powers, solver_config)
    second = power_sweep_grid(dqd, resonator, SpinState.SINGLET_GROUND, frequencies, powers, solver_config)
    for a, b in zip(first, second):
        assert np.array_equal(a.c_q_eff, b.c_q_eff)
        assert np.array_equal(a.v_node, b.v_node)
        assert np.array_equal(a.iterations, b.iterations)
        assert np.array_equal(a.converged, b.converged)
