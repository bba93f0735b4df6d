"""
Design-space calculations: noise-temperature headroom, FDMA channel width
and SNR over noise temperature and integration time.
"""

import numpy as np

from typing import Tuple, Union

from auxiliaries.units import db_to_linear, linear_to_db

ArrayLike = Union[float, np.ndarray]


class InfeasibleTargetError(Exception):
    """
    Exception raised when the target SNR exceeds what the readout delivers.

    Attributes:
    ----------
    message : str
        Explanation of the error.
    """


def excess_snr_db(snr_n_dbhz: float, target_snr_db: float, t_int: float) -> float:
    """
    SNR margin (snr_n + 10 log10 t_int) - target in dB.
    """
    return snr_n_dbhz + float(linear_to_db(t_int)) - target_snr_db


def required_noise_temperature(
    snr_n_dbhz: float,
    reference_t_n: float,
    target_snr_db: float,
    t_int: float,
    t_amb_electronics: float,
) -> Tuple[float, float]:
    """
    Largest noise temperatures that still meet a target SNR.

    The excess SNR over the target is spent on raising the noise density:
    max_t_n = reference_t_n * 10^(excess / 10), and the electronics may add
    max_t_sys = max_t_n - t_amb_electronics on top of their ambient.

    Parameters:
    -----------
    snr_n_dbhz : float
        Normalised SNR in dB Hz obtained with reference_t_n.
    reference_t_n : float
        Noise temperature behind snr_n_dbhz in K.
    target_snr_db : float
        Required SNR in dB (11.5 dB for a BER of 1e-4).
    t_int : float
        Integration time in s.
    t_amb_electronics : float
        Ambient temperature of the readout electronics in K.

    Returns:
    --------
    Tuple[float, float]
        max_t_n and max_t_sys in K.

    Raises:
    -------
    InfeasibleTargetError
        If the excess is negative.
    """
    excess = excess_snr_db(snr_n_dbhz, target_snr_db, t_int)
    if excess < 0:
        raise InfeasibleTargetError(
            f"Target SNR of {target_snr_db} dB exceeds the available "
            f"{target_snr_db + excess:.2f} dB at T_int = {t_int:.3g} s."
        )
    max_t_n = reference_t_n * float(db_to_linear(excess))
    return max_t_n, max_t_n - t_amb_electronics


def fdma_channel_estimate(freq_shift: float, resonator_bandwidth: float) -> float:
    """
    Channel bandwidth per qubit: state-dependent shift plus resonator bandwidth, in Hz.
    """
    if freq_shift < 0 or resonator_bandwidth < 0:
        raise ValueError(
            f"Shift and bandwidth must be >= 0, got {freq_shift} Hz and {resonator_bandwidth} Hz."
        )
    return freq_shift + resonator_bandwidth


def contour_snr_db(
    snr_n_dbhz: float,
    reference_t_n: float,
    t_sys: ArrayLike,
    t_amb: float,
    t_int: ArrayLike,
) -> ArrayLike:
    """
    SNR for a readout whose noise temperature is t_sys + t_amb.

    Rescales a normalised SNR measured at reference_t_n to the new noise
    temperature and integrates for t_int (arrays broadcast).
    """
    t_n = np.asarray(t_sys, dtype=float) + t_amb
    return snr_n_dbhz + linear_to_db(reference_t_n / t_n) + linear_to_db(t_int)
