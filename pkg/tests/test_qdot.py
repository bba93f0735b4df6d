import numpy as np
import pytest

from dataclasses import replace

from auxiliaries.units import joule_to_two_tc_ghz, uev_to_joule
from qdot import (
    AdiabaticRegime,
    DqdParams,
    DriveSpec,
    SpinState,
    adiabaticity_factor,
    classify_adiabaticity,
    closed_form_check,
    effective_quantum_capacitance,
    effective_quantum_capacitance_closed_form,
    effective_quantum_capacitance_fast,
    quantum_capacitance,
    singlet_energies,
    triplet_energies,
    tunnel_coupling_for_factor,
)
from qdot.constants import BOHR_MAGNETON
from qdot.quantum_capacitance import complete_elliptic_e

F_READOUT = 6.91e9


def amplitude_for(dqd: DqdParams, reduced_amplitude: float) -> float:
    # V_A such that beta V_A / (2 t_c) equals the reduced amplitude
    return reduced_amplitude * 2.0 * dqd.tunnel_coupling / dqd.lever_arm


def test_small_signal_capacitance(dqd):
    assert dqd.small_signal_capacitance == pytest.approx(14.29e-18, rel=1e-3)


def test_parameter_validation():
    with pytest.raises(ValueError):
        DqdParams(tunnel_coupling=0.0, lever_arm=1e-20, c_geo=1e-15)
    with pytest.raises(ValueError):
        DqdParams(tunnel_coupling=1e-24, lever_arm=-1e-20, c_geo=1e-15)
    with pytest.raises(ValueError):
        DriveSpec(amplitude=-1e-3, frequency=1e9)


def test_singlet_gap_at_zero_detuning(dqd):
    ground, excited = singlet_energies(dqd, 0.0)
    assert excited - ground == pytest.approx(2.0 * dqd.tunnel_coupling)
    # Far detuned, the branches approach -/+ eps / 2
    eps = uev_to_joule(1000.0)
    ground, _ = singlet_energies(dqd, eps)
    assert ground == pytest.approx(-eps / 2.0, rel=1e-3)


def test_singlet_energies_are_even_and_approach_half_detuning(dqd):
    t_c = dqd.tunnel_coupling
    detuning = np.linspace(20.0 * t_c, 200.0 * t_c, 19)
    ground, excited = singlet_energies(dqd, detuning)
    mirrored_ground, mirrored_excited = singlet_energies(dqd, -detuning)
    assert np.array_equal(ground, mirrored_ground)
    assert np.array_equal(excited, mirrored_excited)
    assert np.all(np.abs(np.abs(ground) / (detuning / 2.0) - 1.0) < 0.01)
    assert np.all(np.abs(excited / (detuning / 2.0) - 1.0) < 0.01)


def test_triplets_split_by_zeeman_energy(dqd):
    field = replace(dqd, b_field=0.1)
    t0, t_minus, t_plus = triplet_energies(field, np.array([0.0, 1e-24]))
    assert np.allclose(t0, [0.0, 0.5e-24])
    assert np.allclose(t0 - t_minus, 2.0 * BOHR_MAGNETON * 0.1)
    assert np.allclose(t_plus - t0, 2.0 * BOHR_MAGNETON * 0.1)


def test_quantum_capacitance_shapes(dqd):
    c0 = dqd.small_signal_capacitance
    assert quantum_capacitance(dqd, SpinState.SINGLET_GROUND, 0.0) == pytest.approx(c0)
    assert quantum_capacitance(dqd, SpinState.SINGLET_EXCITED, 0.0) == pytest.approx(-c0)
    assert quantum_capacitance(dqd, SpinState.TRIPLET_MINUS, 0.0) == 0.0
    # eps = 2 t_c gives 2^(-3/2)
    value = quantum_capacitance(dqd, SpinState.SINGLET_GROUND, 2.0 * dqd.tunnel_coupling)
    assert value == pytest.approx(c0 * 2.0**-1.5)
    detuning = np.linspace(-1e-23, 1e-23, 5)
    values = quantum_capacitance(dqd, SpinState.SINGLET_GROUND, detuning)
    assert values.shape == (5,)
    assert np.allclose(values, values[::-1])


def test_drive_average_reference_value(dqd):
    drive = DriveSpec(amplitude=amplitude_for(dqd, 2.0), frequency=F_READOUT)
    value = effective_quantum_capacitance(dqd, drive)
    assert value / dqd.small_signal_capacitance == pytest.approx(0.335522, rel=2e-5)


def test_drive_average_limits(dqd):
    c0 = dqd.small_signal_capacitance
    at_rest = effective_quantum_capacitance(dqd, DriveSpec(0.0, F_READOUT))
    assert at_rest == pytest.approx(c0)
    offset = 1.5 * dqd.tunnel_coupling
    static = effective_quantum_capacitance(dqd, DriveSpec(0.0, F_READOUT, offset))
    assert static == pytest.approx(quantum_capacitance(dqd, SpinState.SINGLET_GROUND, offset))
    triplet = effective_quantum_capacitance(
        dqd, DriveSpec(1e-3, F_READOUT), SpinState.TRIPLET_MINUS
    )
    assert triplet == 0.0
    excited = effective_quantum_capacitance(
        dqd, DriveSpec(1e-3, F_READOUT), SpinState.SINGLET_EXCITED
    )
    assert excited == pytest.approx(-effective_quantum_capacitance(dqd, DriveSpec(1e-3, F_READOUT)))


def test_drive_average_decreases_with_amplitude(dqd):
    values = [
        effective_quantum_capacitance(dqd, DriveSpec(amplitude_for(dqd, a), F_READOUT))
        for a in (0.1, 0.5, 1.0, 2.0, 10.0, 100.0)
    ]
    assert all(np.diff(values) < 0)
    # Large amplitudes fall off as (2 / pi) / a
    assert values[-1] / dqd.small_signal_capacitance == pytest.approx(2.0 / np.pi / 100.0, rel=1e-3)


def test_averaging_needs_a_whole_period(dqd):
    drive = DriveSpec(amplitude_for(dqd, 3.0), F_READOUT)
    with pytest.raises(ValueError):
        effective_quantum_capacitance(dqd, drive, periods=0)


@pytest.mark.parametrize("periods", [1, 3, 10])
def test_averaging_over_whole_periods_is_invariant(dqd, periods):
    drive = DriveSpec(amplitude_for(dqd, 3.0), F_READOUT, 0.4 * dqd.tunnel_coupling)
    one = effective_quantum_capacitance(dqd, drive)
    assert effective_quantum_capacitance(dqd, drive, periods=periods) == pytest.approx(one, rel=1e-10)


def test_drive_average_is_even_in_static_detuning(dqd):
    for offset in (0.3, 1.0, 4.0):
        for reduced_amplitude in (0.5, 2.0, 6.0):
            amplitude = amplitude_for(dqd, reduced_amplitude)
            positive = DriveSpec(amplitude, F_READOUT, offset * 2.0 * dqd.tunnel_coupling)
            negative = DriveSpec(amplitude, F_READOUT, -offset * 2.0 * dqd.tunnel_coupling)
            assert effective_quantum_capacitance(dqd, positive) == pytest.approx(
                effective_quantum_capacitance(dqd, negative), rel=1e-8
            )


@pytest.mark.parametrize("reduced_amplitude", [0.0, 1.0, 5.0, 10.0])
def test_far_detuned_drive_averages_to_nothing(dqd, reduced_amplitude):
    drive = DriveSpec(amplitude_for(dqd, reduced_amplitude), F_READOUT, 50.0 * dqd.tunnel_coupling)
    assert abs(effective_quantum_capacitance(dqd, drive)) < 0.01 * dqd.small_signal_capacitance


def test_fast_average_matches_quadrature(dqd):
    reduced = np.array([0.0, 0.3, 1.0, 2.0, 7.5, 40.0])
    amplitudes = amplitude_for(dqd, reduced)
    fast = effective_quantum_capacitance_fast(dqd, amplitudes)
    for amplitude, value in zip(amplitudes, fast):
        reference = effective_quantum_capacitance(dqd, DriveSpec(amplitude, F_READOUT))
        assert value == pytest.approx(reference, rel=1e-7)


def test_elliptic_integral_for_negative_parameter():
    assert complete_elliptic_e(0.0) == pytest.approx(np.pi / 2.0)
    # E(-4) = sqrt(5) E(4 / 5)
    assert complete_elliptic_e(-4.0) == pytest.approx(2.635183, rel=1e-6)


def test_standard_closed_form_agrees_and_printed_reading_does_not(dqd):
    amplitude = amplitude_for(dqd, 2.0)
    standard = effective_quantum_capacitance_closed_form(dqd, amplitude)
    assert standard / dqd.small_signal_capacitance == pytest.approx(0.335522, rel=2e-5)

    check = closed_form_check(dqd, amplitude)
    assert check.standard_agrees
    assert check.standard_deviation < 1e-6
    assert not check.printed_agrees
    # k^2 sin(theta) exceeds one on part of the period
    assert abs(check.printed.imag) > 0.0


def test_closed_form_rejects_unknown_convention(dqd):
    with pytest.raises(ValueError):
        effective_quantum_capacitance_closed_form(dqd, 1e-3, convention="other")


def test_adiabaticity_of_reference_device(dqd):
    factor = adiabaticity_factor(dqd, F_READOUT)
    assert factor == pytest.approx(14.1 / 6.91)
    report = classify_adiabaticity(factor)
    assert report.regime is AdiabaticRegime.ADIABATIC
    assert report.near_recommended
    assert classify_adiabaticity(1.0).regime is AdiabaticRegime.BOUNDARY
    assert classify_adiabaticity(0.5).regime is AdiabaticRegime.NON_ADIABATIC


def test_tunnel_coupling_for_factor():
    t_c = tunnel_coupling_for_factor(F_READOUT, 2.0)
    assert joule_to_two_tc_ghz(t_c) == pytest.approx(13.82)
    with pytest.raises(ValueError):
        tunnel_coupling_for_factor(F_READOUT, 0.0)


def test_small_signal_limit(dqd):
    value = effective_quantum_capacitance(dqd, DriveSpec(1e-6, F_READOUT))
    assert value == pytest.approx(14.29e-18, rel=1e-3)


def test_capacitance_matches_curvature_of_ground_singlet(dqd):
    rng = np.random.default_rng(7)
    detuning = rng.uniform(-20.0, 20.0, 100) * dqd.tunnel_coupling
    step = 1e-3 * dqd.tunnel_coupling

    def ground(eps):
        return singlet_energies(dqd, eps)[0]

    curvature = (ground(detuning + step) - 2.0 * ground(detuning) + ground(detuning - step)) / step**2
    expected = -(dqd.lever_arm**2) * curvature
    values = quantum_capacitance(dqd, SpinState.SINGLET_GROUND, detuning)
    assert np.allclose(values, expected, rtol=1e-3)


def test_closed_form_at_one_millivolt(dqd):
    assert closed_form_check(dqd, 1e-3).standard_deviation < 0.01
