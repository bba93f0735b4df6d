import numpy as np
import pytest

from auxiliaries.peak_finding import interpolate_peak
from auxiliaries.units import (
    amplitude_to_db,
    coulomb_to_mev_per_v,
    dbm_to_watt,
    joule_to_two_tc_ghz,
    joule_to_uev,
    linear_to_db,
    mev_per_v_to_coulomb,
    two_tc_ghz_to_joule,
    uev_to_joule,
    watt_to_dbm,
)


def test_tunnel_coupling_from_gap_frequency():
    # 2 t_c / h = 14.1 GHz
    assert two_tc_ghz_to_joule(14.1) == pytest.approx(4.6715e-24, rel=1e-4)
    assert joule_to_two_tc_ghz(two_tc_ghz_to_joule(14.1)) == pytest.approx(14.1)


def test_lever_arm_in_elementary_charges():
    assert mev_per_v_to_coulomb(102.0) == pytest.approx(0.102 * 1.602176634e-19)
    assert coulomb_to_mev_per_v(mev_per_v_to_coulomb(102.0)) == pytest.approx(102.0)


def test_power_conversions():
    assert dbm_to_watt(-95.0) == pytest.approx(3.1623e-13, rel=1e-4)
    assert watt_to_dbm(1e-3) == pytest.approx(0.0)
    assert linear_to_db(0.46 / 25.8) == pytest.approx(-17.489, abs=1e-3)
    assert amplitude_to_db(0.1) == pytest.approx(-20.0)
    assert np.isneginf(amplitude_to_db(0.0))


def test_energy_in_micro_electronvolt():
    assert joule_to_uev(uev_to_joule(42.0)) == pytest.approx(42.0)


def test_peak_interpolation_recovers_parabola_vertex():
    x = np.linspace(0.0, 1.0, 11)
    y = -((x - 0.437) ** 2)
    peak = interpolate_peak(x, y)
    assert not peak.at_edge
    assert peak.position == pytest.approx(0.437, abs=1e-12)
    assert peak.value == pytest.approx(0.0, abs=1e-12)


def test_peak_at_grid_edge_is_flagged():
    x = np.linspace(0.0, 1.0, 11)
    peak = interpolate_peak(x, x)
    assert peak.at_edge
    assert peak.position == 1.0


def test_peak_rejects_mismatched_shapes():
    with pytest.raises(ValueError):
        interpolate_peak(np.arange(3.0), np.arange(4.0))
