import numpy as np

from dataclasses import dataclass
from scipy import special
from typing import Union

from auxiliaries.units import linear_to_db

from .noise_chain import noise_density

ArrayLike = Union[float, np.ndarray]

# Headroom for rounding when checking |S21| differences against their bound of 4
SEPARATION_SLACK = 1e-9


@dataclass(frozen=True)
class ReadoutFigures:
    """
    Figures of merit of one readout configuration.

    Attributes:
    -----------
    p_sig : float
        Signal power at port-2 in W.
    n0 : float
        Noise density k T_N in W/Hz.
    t_int : float
        Integration time in s.
    snr_linear : float
        p_sig t_int / n0.
    snr_db : float
        10 log10(snr_linear).
    snr_n_dbhz : float
        Normalised SNR, snr_db - 10 log10(t_int), in dB Hz.
    ber : float
        Bit error rate Q(sqrt(snr_linear)).
    fidelity : float
        1 - ber.
    """

    p_sig: float
    n0: float
    t_int: float
    snr_linear: float
    snr_db: float
    snr_n_dbhz: float
    ber: float
    fidelity: float


def state_separation(s21_ket0: ArrayLike, s21_ket1: ArrayLike) -> ArrayLike:
    """
    State-separation factor |S21(state 0) - S21(state 1)|^2.
    """
    return np.square(np.abs(np.asarray(s21_ket0) - np.asarray(s21_ket1)))


def signal_power(p_rf: ArrayLike, separation: ArrayLike) -> ArrayLike:
    """
    Signal power P_RF * separation delivered to the port-2 load in W.
    """
    p_rf = np.asarray(p_rf, dtype=float)
    separation = np.asarray(separation, dtype=float)
    if np.any(p_rf < 0):
        raise ValueError("RF power must be non-negative.")
    if np.any(separation < 0) or np.any(separation > 4.0 + SEPARATION_SLACK):
        raise ValueError("Separation factor must lie in [0, 4].")
    value = p_rf * separation
    return value if np.ndim(value) else float(value)


def ber(snr_linear: ArrayLike) -> ArrayLike:
    """
    Bit error rate Q(sqrt(SNR)) with Q(x) = erfc(x / sqrt(2)) / 2.
    """
    snr_linear = np.asarray(snr_linear, dtype=float)
    if np.any(snr_linear < 0):
        raise ValueError("SNR must be non-negative.")
    value = 0.5 * special.erfc(np.sqrt(snr_linear) / np.sqrt(2.0))
    return value if np.ndim(value) else float(value)


def snr_n_dbhz(p_sig: ArrayLike, t_n: float) -> ArrayLike:
    """
    Normalised SNR P_sig / (k T_N) in dB Hz, independent of the integration time.
    """
    return linear_to_db(np.asarray(p_sig, dtype=float) / noise_density(t_n))


def snr(p_sig: float, t_n: float, t_int: float) -> ReadoutFigures:
    """
    Readout figures of a signal power against a noise temperature.

    Parameters:
    -----------
    p_sig : float
        Signal power in W.
    t_n : float
        System noise temperature in K.
    t_int : float
        Integration time in s.

    Returns:
    --------
    ReadoutFigures
    """
    if not t_n > 0 or not t_int > 0:
        raise ValueError(
            f"Noise temperature and integration time must be > 0, got {t_n} K and {t_int} s."
        )
    n0 = noise_density(t_n)
    snr_linear = p_sig * t_int / n0
    error_rate = ber(snr_linear)
    return ReadoutFigures(
        p_sig=p_sig,
        n0=n0,
        t_int=t_int,
        snr_linear=snr_linear,
        snr_db=float(linear_to_db(snr_linear)),
        snr_n_dbhz=float(snr_n_dbhz(p_sig, t_n)),
        ber=error_rate,
        fidelity=1.0 - error_rate,
    )
