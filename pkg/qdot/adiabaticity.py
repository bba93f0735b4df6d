from dataclasses import dataclass
from enum import Enum

from .constants import PLANCK
from .dqd_params import DqdParams

RECOMMENDED_FACTOR = 2.0


class AdiabaticRegime(Enum):
    ADIABATIC = "adiabatic"
    BOUNDARY = "boundary"
    NON_ADIABATIC = "non-adiabatic"


@dataclass(frozen=True)
class AdiabaticityReport:
    """
    Classification of a readout frequency against the singlet gap.

    Attributes:
    -----------
    factor : float
        (2 t_c / h) / f_r.
    regime : AdiabaticRegime
        Adiabatic above one, non-adiabatic below, boundary at one.
    near_recommended : bool
        True if the factor lies within the tolerance of the recommended bias of 2.
    """

    factor: float
    regime: AdiabaticRegime
    near_recommended: bool


def adiabaticity_factor(params: DqdParams, readout_frequency: float) -> float:
    """
    Ratio of the singlet gap frequency 2t_c/h to the readout frequency f_r.
    """
    if not readout_frequency > 0:
        raise ValueError(f"Readout frequency must be > 0, got {readout_frequency} Hz.")
    return 2.0 * params.tunnel_coupling / PLANCK / readout_frequency


def classify_adiabaticity(
    factor: float, boundary_tolerance: float = 1e-9, recommended_tolerance: float = 0.1
) -> AdiabaticityReport:
    """
    Classify an adiabaticity factor.

    Parameters:
    -----------
    factor : float
        Value from adiabaticity_factor.
    boundary_tolerance : float, optional
        Relative band around one that counts as the boundary (default is 1e-9).
    recommended_tolerance : float, optional
        Absolute band around the recommended factor of 2 (default is 0.1).

    Returns:
    --------
    AdiabaticityReport
    """
    if abs(factor - 1.0) <= boundary_tolerance:
        regime = AdiabaticRegime.BOUNDARY
    elif factor > 1.0:
        regime = AdiabaticRegime.ADIABATIC
    else:
        regime = AdiabaticRegime.NON_ADIABATIC
    return AdiabaticityReport(
        factor=factor,
        regime=regime,
        near_recommended=abs(factor - RECOMMENDED_FACTOR) <= recommended_tolerance,
    )


def tunnel_coupling_for_factor(
    readout_frequency: float, factor: float = RECOMMENDED_FACTOR
) -> float:
    """
    Tunnel coupling t_c (J) that biases the device at a given adiabaticity factor.
    """
    if not readout_frequency > 0 or not factor > 0:
        raise ValueError(
            f"Readout frequency and factor must be > 0, got {readout_frequency} Hz and {factor}."
        )
    return factor * PLANCK * readout_frequency / 2.0
