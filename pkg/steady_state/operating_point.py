from dataclasses import dataclass

from network import SParams
from qdot import SpinState


@dataclass(frozen=True)
class OperatingPoint:
    """
    Self-consistent solution at one frequency, power and spin state.

    Attributes:
    -----------
    frequency : float
        Readout frequency in Hz.
    p_rf : float
        Source power in W.
    state : SpinState
        Spin state of DQD2.
    v_node : complex
        Voltage phasor at the readout node in V.
    c_q_eff : float
        Drive-averaged quantum capacitance in F.
    s_params : SParams
        S-parameters of the sample with c_q_eff in place.
    iterations : int
        Number of fixed-point iterations used.
    converged : bool
        False if the iteration cap was hit; the best iterate is returned then.
    detuning_offset : float
        Static detuning epsilon_0 in J.
    """

    frequency: float
    p_rf: float
    state: SpinState
    v_node: complex
    c_q_eff: float
    s_params: SParams
    iterations: int
    converged: bool
    detuning_offset: float = 0.0

    @property
    def s21(self) -> complex:
        return complex(self.s_params.s21)
