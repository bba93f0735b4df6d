import math
import pytest

from auxiliaries.units import dbm_to_watt
from network import lumped_equivalent
from qdot import SpinState
from steady_state import (
    SolverError,
    minimum_settle_periods,
    solve_operating_point,
    transient_oracle,
)

F_BARE = 6.91e9


def test_settle_allowance_follows_loaded_q(resonator, dqd):
    q = lumped_equivalent(resonator, dqd.c_geo).loaded_q
    assert minimum_settle_periods(resonator, dqd.c_geo) == math.ceil(20.0 * q / math.pi)


def test_argument_validation(resonator, dqd):
    with pytest.raises(SolverError):
        transient_oracle(dqd, resonator, SpinState.SINGLET_GROUND, F_BARE, -1.0)
    with pytest.raises(SolverError):
        transient_oracle(dqd, resonator, SpinState.SINGLET_GROUND, F_BARE, 1e-16, steps_per_period=64)
    with pytest.raises(SolverError):
        transient_oracle(dqd, resonator, SpinState.SINGLET_GROUND, F_BARE, 1e-16, periods_settle=10)


def test_zero_power_is_silent(resonator, dqd):
    result = transient_oracle(dqd, resonator, SpinState.SINGLET_GROUND, F_BARE, 0.0)
    assert result.v_node == 0j
    assert result.s21 == 0j


@pytest.mark.slow
def test_linear_run_reproduces_lumped_peak(resonator, dqd):
    result = transient_oracle(
        dqd, resonator, SpinState.TRIPLET_MINUS, F_BARE, dbm_to_watt(-110.0), linear_capacitance=0.0
    )
    assert abs(result.s21) == pytest.approx(lumped_equivalent(resonator, dqd.c_geo).peak_transmission, rel=0.02)
    assert result.third_harmonic < 1e-3


@pytest.mark.slow
@pytest.mark.parametrize("p_dbm", [-130.0, -110.0, -95.0])
def test_agrees_with_harmonic_solver(resonator, dqd, solver_config, p_dbm):
    p_rf = dbm_to_watt(p_dbm)
    harmonic = solve_operating_point(dqd, resonator, SpinState.SINGLET_GROUND, F_BARE, p_rf, solver_config)
    transient = transient_oracle(dqd, resonator, SpinState.SINGLET_GROUND, F_BARE, p_rf)
    assert abs(transient.v_node) == pytest.approx(abs(harmonic.v_node), rel=0.05)
    assert abs(transient.s21) == pytest.approx(abs(harmonic.s21), rel=0.05)
