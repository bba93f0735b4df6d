"""
Conversions between the lab configuration units and strict SI.

Configuration files speak GHz, meV/V, fF, dBm and microseconds; everything
below the loaders works in J, C, F, Hz, W and s.
"""

import numpy as np

from typing import Union

from scipy.constants import e as ELEMENTARY_CHARGE, h as PLANCK

ArrayLike = Union[float, np.ndarray]


def ghz_to_hz(value: ArrayLike) -> ArrayLike:
    return value * 1e9


def hz_to_ghz(value: ArrayLike) -> ArrayLike:
    return value / 1e9


def ff_to_farad(value: float) -> float:
    return float(value) * 1e-15


def farad_to_ff(value: ArrayLike) -> ArrayLike:
    return value * 1e15


def farad_to_af(value: ArrayLike) -> ArrayLike:
    return value * 1e18


def us_to_s(value: ArrayLike) -> ArrayLike:
    return value * 1e-6


def s_to_us(value: ArrayLike) -> ArrayLike:
    return value * 1e6


def two_tc_ghz_to_joule(two_tc_over_h_ghz: float) -> float:
    """
    Convert the configured gap frequency 2t_c/h (GHz) into the tunnel coupling t_c (J).
    """
    return PLANCK * float(two_tc_over_h_ghz) * 1e9 / 2.0


def joule_to_two_tc_ghz(tunnel_coupling: float) -> float:
    return 2.0 * tunnel_coupling / PLANCK / 1e9


def mev_per_v_to_coulomb(lever_arm_mev_per_v: float) -> float:
    """
    Convert a lever arm in meV/V into beta = |e| * C_g / C_sigma in coulomb.

    A lever arm of 102 meV/V means 0.102 eV of detuning per volt of gate
    voltage, i.e. beta = 0.102 * |e|.
    """
    return float(lever_arm_mev_per_v) * 1e-3 * ELEMENTARY_CHARGE


def coulomb_to_mev_per_v(lever_arm: float) -> float:
    return lever_arm / ELEMENTARY_CHARGE * 1e3


def joule_to_uev(value: ArrayLike) -> ArrayLike:
    return value / ELEMENTARY_CHARGE * 1e6


def uev_to_joule(value: ArrayLike) -> ArrayLike:
    return np.asarray(value, dtype=float) * 1e-6 * ELEMENTARY_CHARGE


def db_to_linear(value_db: ArrayLike) -> ArrayLike:
    return np.power(10.0, np.asarray(value_db, dtype=float) / 10.0)


def linear_to_db(value: ArrayLike) -> ArrayLike:
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(value)


def dbm_to_watt(value_dbm: ArrayLike) -> ArrayLike:
    return 1e-3 * db_to_linear(value_dbm)


def watt_to_dbm(value_w: ArrayLike) -> ArrayLike:
    return linear_to_db(np.asarray(value_w, dtype=float) / 1e-3)


def amplitude_to_db(value: ArrayLike) -> ArrayLike:
    """
    Convert a voltage ratio (e.g. |S21|) into dB.
    """
    with np.errstate(divide="ignore"):
        return 20.0 * np.log10(np.abs(value))
