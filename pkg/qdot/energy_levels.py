import numpy as np

from typing import Tuple, Union

from .constants import BOHR_MAGNETON
from .dqd_params import DqdParams

ArrayLike = Union[float, np.ndarray]


def singlet_energies(
    params: DqdParams, detuning: ArrayLike
) -> Tuple[ArrayLike, ArrayLike]:
    """
    Energies of the hybridised singlet branches, -/+ 1/2 sqrt(eps^2 + 4 t_c^2).

    Parameters:
    -----------
    params : DqdParams
        Device parameters.
    detuning : float or np.ndarray
        Detuning eps in J.

    Returns:
    --------
    Tuple[ArrayLike, ArrayLike]
        Ground and excited singlet energies in J.
    """
    half_gap = 0.5 * np.sqrt(np.square(detuning) + 4.0 * params.tunnel_coupling**2)
    return -half_gap, half_gap


def triplet_energies(
    params: DqdParams, detuning: ArrayLike
) -> Tuple[ArrayLike, ArrayLike, ArrayLike]:
    """
    Energies of the (1,1) triplets T0, T- and T+ in J.
    """
    e_t0 = 0.5 * np.asarray(detuning, dtype=float)
    zeeman = params.g_factor * BOHR_MAGNETON * params.b_field
    return e_t0, e_t0 - zeeman, e_t0 + zeeman
