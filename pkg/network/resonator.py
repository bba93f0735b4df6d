"""
Circuit model of the sample: a high-impedance half-wave line between two
coupling capacitors, with one DQD gate capacitor at each line end.

    port-1 -- C_c --+-- R/2 --[ line ]-- R/2 --+-- C_c -- port-2
                    |                          |
                 C_dqd1                     C_dqd2  (readout node)
"""

import logging
import numpy as np

from dataclasses import dataclass, replace
from scipy import optimize
from typing import List, Optional, Union

from auxiliaries.peak_finding import interpolate_peak
from auxiliaries.units import ff_to_farad, ghz_to_hz

from .s_params import SParams, s_params
from .two_port import (
    TwoPortAbcd,
    cascade,
    element_series_impedance,
    element_shunt_admittance,
    element_tline,
)

logger = logging.getLogger(__name__)

FrequencyLike = Union[float, np.ndarray]

# Peak search: coarse grid relative to f_halfwave, then a bounded scalar refinement
PEAK_WINDOW = (0.2, 1.2)
PEAK_GRID_POINTS = 2401
# Calibration window for f_halfwave relative to the target, and its tolerance
CALIBRATION_WINDOW = (0.5, 4.0)
CALIBRATION_XTOL = 1e3  # Hz


class CalibrationError(Exception):
    """
    Exception raised when the half-wave calibration cannot bracket its target.

    Attributes:
    ----------
    message : str
        Explanation of the error, naming the search window.
    """


@dataclass(frozen=True)
class ResonatorParams:
    """
    Resonator and port parameters in SI units.

    Attributes:
    -----------
    z_tl : float
        Characteristic impedance of the line in Ohm.
    z0 : float
        System (port) impedance in Ohm.
    c_c : float
        Capacitance of each coupling capacitor in F.
    r_tl : float
        Total series loss resistance of the line in Ohm.
    bare_resonance_target : float
        Loaded resonance of the |T> state the line is calibrated to, in Hz.
    f_halfwave : float, optional
        Half-wave frequency of the bare line in Hz; None until calibrated.
    """

    z_tl: float
    z0: float
    c_c: float
    r_tl: float
    bare_resonance_target: float
    f_halfwave: Optional[float] = None

    def __post_init__(self) -> None:
        if not self.z_tl > self.z0 > 0:
            raise ValueError(
                f"Expected z_tl > z0 > 0, got z_tl = {self.z_tl} Ohm and z0 = {self.z0} Ohm."
            )
        if not self.c_c > 0:
            raise ValueError(f"Coupling capacitance must be positive, got {self.c_c} F.")
        if self.r_tl < 0:
            raise ValueError(f"Line loss must be non-negative, got {self.r_tl} Ohm.")
        if not self.bare_resonance_target > 0:
            raise ValueError(
                f"Resonance target must be positive, got {self.bare_resonance_target} Hz."
            )

    @classmethod
    def from_lab_units(
        cls,
        z_tl_ohm: float,
        z0_ohm: float,
        c_c_ff: float,
        r_tl_ohm: float,
        f_bare_ghz: float,
    ) -> "ResonatorParams":
        return cls(
            z_tl=float(z_tl_ohm),
            z0=float(z0_ohm),
            c_c=ff_to_farad(c_c_ff),
            r_tl=float(r_tl_ohm),
            bare_resonance_target=ghz_to_hz(float(f_bare_ghz)),
        )

    @property
    def is_calibrated(self) -> bool:
        return self.f_halfwave is not None

    def with_halfwave(self, f_halfwave: float) -> "ResonatorParams":
        return replace(self, f_halfwave=float(f_halfwave))

    def electrical_length_at(self, f: FrequencyLike) -> FrequencyLike:
        """
        Phase length gamma * l = pi f / f_halfwave of the line in rad.
        """
        if not self.is_calibrated:
            raise CalibrationError(
                "The resonator has no half-wave frequency; run calibrate_resonator first."
            )
        return np.pi * np.asarray(f, dtype=float) / self.f_halfwave


def _feed_side(res: ResonatorParams, dqd1_cap: float, f: FrequencyLike) -> List[TwoPortAbcd]:
    # Port-1 up to the readout node
    omega = 2.0 * np.pi * np.asarray(f, dtype=float)
    return [
        element_series_impedance(1.0 / (1j * omega * res.c_c)),
        element_shunt_admittance(1j * omega * dqd1_cap),
        element_series_impedance(0.5 * res.r_tl * np.ones_like(omega)),
        element_tline(res.z_tl, 0.0, res.electrical_length_at(f)),
        element_series_impedance(0.5 * res.r_tl * np.ones_like(omega)),
    ]


def _load_side(res: ResonatorParams, dqd2_cap: FrequencyLike, f: FrequencyLike) -> List[TwoPortAbcd]:
    # Readout node up to port-2
    omega = 2.0 * np.pi * np.asarray(f, dtype=float)
    return [
        element_shunt_admittance(1j * omega * dqd2_cap),
        element_series_impedance(1.0 / (1j * omega * res.c_c)),
    ]


def sample_network(
    res: ResonatorParams, dqd1_cap: float, dqd2_cap: FrequencyLike, f: FrequencyLike
) -> TwoPortAbcd:
    """
    Chain matrix of the full sample from port-1 to port-2.

    Parameters:
    -----------
    res : ResonatorParams
        Calibrated resonator parameters.
    dqd1_cap : float
        Shunt capacitance at the port-1 end (geometric only) in F.
    dqd2_cap : float or np.ndarray
        Shunt capacitance at the readout node (geometric plus quantum) in F;
        an array must match the frequency grid.
    f : float or np.ndarray
        Frequency in Hz.

    Returns:
    --------
    TwoPortAbcd
    """
    if np.any(np.asarray(f) <= 0):
        raise ValueError("Frequencies must be positive.")
    return cascade(_feed_side(res, dqd1_cap, f) + _load_side(res, dqd2_cap, f))


def sample_s_params(
    res: ResonatorParams, dqd1_cap: float, dqd2_cap: FrequencyLike, f: FrequencyLike
) -> SParams:
    return s_params(sample_network(res, dqd1_cap, dqd2_cap, f), res.z0)


def input_impedance(
    res: ResonatorParams, dqd1_cap: float, dqd2_cap: FrequencyLike, f: FrequencyLike
) -> FrequencyLike:
    """
    Impedance seen at port-1 with port-2 terminated in z0.
    """
    return sample_network(res, dqd1_cap, dqd2_cap, f).input_impedance(res.z0)


def node_voltage_transfer(
    res: ResonatorParams,
    dqd2_cap: FrequencyLike,
    f: FrequencyLike,
    p_rf: float,
    dqd1_cap: float,
) -> FrequencyLike:
    """
    Voltage phasor (peak amplitude) at the DQD2 readout-gate node.

    The source is a z0 generator of power p_rf, i.e. an open circuit amplitude
    of twice the incident wave (see incident_voltage); port-2 is terminated
    in z0. The ladder is split at the readout node and the node voltage solved
    from the feed side chain matrix and the impedance of the load side.

    Parameters:
    -----------
    res : ResonatorParams
        Calibrated resonator parameters.
    dqd2_cap : float or np.ndarray
        Shunt capacitance at the readout node in F.
    f : float or np.ndarray
        Frequency in Hz.
    p_rf : float
        Source power in W.
    dqd1_cap : float
        Shunt capacitance at the port-1 end in F.

    Returns:
    --------
    complex or np.ndarray
        Node voltage phasor in V, referenced to the source phase.
    """
    if p_rf < 0:
        raise ValueError(f"RF power must be non-negative, got {p_rf} W.")
    feed = cascade(_feed_side(res, dqd1_cap, f))
    load = cascade(_load_side(res, dqd2_cap, f))
    z_node = load.input_impedance(res.z0)
    v_source = 2.0 * incident_voltage(res, p_rf)
    return v_source / (feed.a + feed.b / z_node + res.z0 * (feed.c + feed.d / z_node))


def incident_voltage(res: ResonatorParams, p_rf: float) -> float:
    """
    Amplitude of the incident wave at port-1, sqrt(z0 p_rf).

    Powers are referred to amplitude phasors as |V|^2 / R, the convention of
    the signal power |A_sig|^2 / R_L, so the physical mean power of a wave is
    half its nominal power.
    """
    return float(np.sqrt(res.z0 * p_rf))


def find_resonance(
    res: ResonatorParams, dqd1_cap: float, dqd2_cap: float
) -> float:
    """
    Frequency of maximum |S21| of the fundamental half-wave mode.

    A coarse grid over PEAK_WINDOW * f_halfwave locates the peak to one grid
    step, a bounded Brent search refines it.

    Returns:
    --------
    float
        Peak frequency in Hz.
    """
    f_hw = res.f_halfwave
    if f_hw is None:
        raise CalibrationError("Cannot search a resonance of an uncalibrated line.")

    grid = np.linspace(PEAK_WINDOW[0] * f_hw, PEAK_WINDOW[1] * f_hw, PEAK_GRID_POINTS)
    magnitude = np.abs(sample_s_params(res, dqd1_cap, dqd2_cap, grid).s21)
    peak = interpolate_peak(grid, magnitude)
    step = grid[1] - grid[0]

    result = optimize.minimize_scalar(
        lambda f: -abs(complex(sample_s_params(res, dqd1_cap, dqd2_cap, f).s21)),
        bounds=(peak.position - step, peak.position + step),
        method="bounded",
        options={"xatol": 1.0},
    )
    return float(result.x)


def calibrate_resonator(res: ResonatorParams, c_geo: float) -> float:
    """
    Find the bare half-wave frequency that puts the |T> resonance on target.

    Bisects f_halfwave inside CALIBRATION_WINDOW * bare_resonance_target until
    the peak |S21| of the network with geometric loading only (C_q = 0) sits at
    bare_resonance_target. The search is deterministic.

    Parameters:
    -----------
    res : ResonatorParams
        Resonator parameters; any existing f_halfwave is ignored.
    c_geo : float
        Geometric DQD capacitance at both line ends in F.

    Returns:
    --------
    float
        Calibrated half-wave frequency in Hz.

    Raises:
    -------
    CalibrationError
        If the target is not bracketed by the search window.
    """
    target = res.bare_resonance_target
    low, high = (factor * target for factor in CALIBRATION_WINDOW)

    def mismatch(f_halfwave: float) -> float:
        return find_resonance(res.with_halfwave(f_halfwave), c_geo, c_geo) - target

    low_mismatch, high_mismatch = mismatch(low), mismatch(high)
    if low_mismatch * high_mismatch > 0:
        raise CalibrationError(
            f"Resonance target {target:.6g} Hz is not bracketed for f_halfwave in "
            f"[{low:.6g}, {high:.6g}] Hz (peak offsets {low_mismatch:.4g} Hz and "
            f"{high_mismatch:.4g} Hz)."
        )
    f_halfwave = optimize.bisect(mismatch, low, high, xtol=CALIBRATION_XTOL)
    logger.info(
        f"Calibrated half-wave frequency {f_halfwave / 1e9:.6f} GHz for a loaded "
        f"resonance at {target / 1e9:.6f} GHz."
    )
    return float(f_halfwave)


def calibrated(res: ResonatorParams, c_geo: float) -> ResonatorParams:
    """
    Copy of the resonator with its calibrated half-wave frequency.
    """
    return res.with_halfwave(calibrate_resonator(res, c_geo))
