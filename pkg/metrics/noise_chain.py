"""
Noise temperature of the readout chain, Friis cascade in temperature form.
"""

import numpy as np

from dataclasses import dataclass, field
from typing import List, Tuple

from qdot.constants import BOLTZMANN, PLANCK


@dataclass(frozen=True)
class AmplifierStage:
    """
    One stage of the readout chain.

    Attributes:
    -----------
    name : str
        Label of the stage (e.g. "TWPA").
    gain : float
        Linear power gain.
    noise_temperature : float
        Input-referred noise temperature in K.
    """

    name: str
    gain: float
    noise_temperature: float

    def __post_init__(self) -> None:
        if not self.gain > 0:
            raise ValueError(f"Gain of stage '{self.name}' must be positive, got {self.gain}.")
        if self.noise_temperature < 0:
            raise ValueError(
                f"Noise temperature of stage '{self.name}' must be >= 0, "
                f"got {self.noise_temperature} K."
            )


@dataclass(frozen=True)
class NoiseChain:
    """
    Ambient temperature at the sample plus the ordered amplifier stages.
    """

    t_amb: float
    stages: Tuple[AmplifierStage, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.t_amb < 0:
            raise ValueError(f"Ambient temperature must be >= 0, got {self.t_amb} K.")


def quantum_limit(frequency: float) -> float:
    """
    Noise temperature h f / k of a quantum-limited amplifier in K.
    """
    return PLANCK * frequency / BOLTZMANN


def noise_contributions(chain: NoiseChain) -> List[Tuple[str, float]]:
    """
    Input-referred contribution T_i / (G_1 ... G_(i-1)) of every stage.

    Returns:
    --------
    List[Tuple[str, float]]
        Pairs of stage name and referred temperature in K, in chain order.
    """
    contributions = []
    preceding_gain = 1.0
    for stage in chain.stages:
        contributions.append((stage.name, stage.noise_temperature / preceding_gain))
        preceding_gain *= stage.gain
    return contributions


def noise_temperature(chain: NoiseChain) -> float:
    """
    Effective noise temperature T_N = T_amb + T_1 + T_2 / G_1 + T_3 / (G_1 G_2) + ...
    """
    return chain.t_amb + float(np.sum([t for _, t in noise_contributions(chain)]))


def noise_density(t_n: float) -> float:
    """
    Single-sided noise power density k T_N in W/Hz.
    """
    return BOLTZMANN * t_n
