"""
Lumped views of the distributed resonator.

The two-node equivalent weighs the line capacitance by the standing-wave
profile of the loaded mode and feeds the time-domain oracle. The resonance
estimate maps the line onto L_TL and C_TL at the calibrated resonance and
refers the DQD2 load to that mode through the two-node equivalent.
"""

import numpy as np

from dataclasses import dataclass

from .resonator import ResonatorParams, calibrate_resonator


def lumped_line_capacitance(z_tl: float, f_0: float) -> float:
    """
    Lumped capacitance pi / (omega_0 Z_TL) of a half-wave line resonating at f_0, in F.
    """
    return np.pi / (2.0 * np.pi * f_0 * z_tl)


def lumped_line_inductance(z_tl: float, f_0: float) -> float:
    """
    Lumped inductance pi Z_TL / omega_0 of a half-wave line resonating at f_0, in H.
    """
    return np.pi * z_tl / (2.0 * np.pi * f_0)


def lumped_resonance_estimate(res: ResonatorParams, c_geo: float, c_q: float) -> float:
    """
    Resonance pi / sqrt(L_TL C_TL,eff) of the lumped line model.

    L_TL and C_TL are taken at the calibrated |T> resonance omega_0, so the
    |T> estimate (c_q = 0) returns bare_resonance_target exactly. The DQD2
    capacitance sits at a voltage antinode: with end-node capacitances C_n
    of the two-node equivalent, the mode sees the series combination of both
    ends, and C_TL,eff = C_TL * C_series(c_q) / C_series(0), i.e.

        C_TL,eff = C_TL * 2 (C_n + c_q) / (2 C_n + c_q)

    Parameters:
    -----------
    res : ResonatorParams
        Resonator parameters; calibrated on the fly if f_halfwave is unset.
    c_geo : float
        Geometric DQD capacitance in F.
    c_q : float
        Quantum capacitance of DQD2 in F (0 for the |T> state).

    Returns:
    --------
    float
        Resonance frequency in Hz.
    """
    f_0 = res.bare_resonance_target
    c_n = lumped_equivalent(res, c_geo).c_node
    l_tl = lumped_line_inductance(res.z_tl, f_0)
    c_eff = lumped_line_capacitance(res.z_tl, f_0) * 2.0 * (c_n + c_q) / (2.0 * c_n + c_q)
    return float(np.pi / np.sqrt(l_tl * c_eff) / (2.0 * np.pi))


@dataclass(frozen=True)
class LumpedEquivalent:
    """
    Two-node narrowband equivalent of the loaded resonator around its |T> resonance.

    Attributes:
    -----------
    frequency : float
        Resonance the equivalent is matched at, in Hz.
    c_line_end : float
        Line capacitance referred to each end node in F.
    c_node : float
        Total linear capacitance of each end node (line, DQD geometric, coupling) in F.
    inductance : float
        Inductor between the two nodes in H.
    g_port : float
        Shunt conductance of each node due to the port loading through C_c in S.
    g_loss : float
        Shunt conductance of each node due to the series line loss in S.
    c_c : float
        Coupling capacitance in F.
    z0 : float
        Port impedance in Ohm.
    """

    frequency: float
    c_line_end: float
    c_node: float
    inductance: float
    g_port: float
    g_loss: float
    c_c: float
    z0: float

    @property
    def g_node(self) -> float:
        return self.g_port + self.g_loss

    @property
    def loaded_q(self) -> float:
        return 2.0 * np.pi * self.frequency * self.c_node / self.g_node

    @property
    def bandwidth(self) -> float:
        return self.frequency / self.loaded_q

    @property
    def peak_transmission(self) -> float:
        """
        |S21| at resonance, the ratio of port to total node conductance.
        """
        return self.g_port / self.g_node


def lumped_equivalent(res: ResonatorParams, c_geo: float) -> LumpedEquivalent:
    """
    Build the two-node equivalent at the calibrated |T> resonance.

    The line's electric energy for end voltages +V and -V is matched by two
    end capacitances C_a = (C' l / 4) (1 - sin(t) / t) / sin^2(t / 2) with
    t the line's phase length at resonance; the inductor then restores the
    resonance. Port and loss resistances become shunt conductances valid
    within the resonator bandwidth.

    Parameters:
    -----------
    res : ResonatorParams
        Resonator parameters; calibrated on the fly if f_halfwave is unset.
    c_geo : float
        Geometric DQD capacitance in F.

    Returns:
    --------
    LumpedEquivalent
    """
    if not res.is_calibrated:
        res = res.with_halfwave(calibrate_resonator(res, c_geo))
    f_res = res.bare_resonance_target
    omega = 2.0 * np.pi * f_res
    theta = float(res.electrical_length_at(f_res))

    c_line_total = lumped_line_capacitance(res.z_tl, res.f_halfwave)
    c_line_end = 0.25 * c_line_total * (1.0 - np.sin(theta) / theta) / np.sin(0.5 * theta) ** 2
    c_load = c_geo + res.c_c
    c_node = c_line_end + c_load

    # Real part of the admittance of C_c in series with the port
    g_port = omega**2 * res.c_c**2 * res.z0 / (1.0 + (omega * res.c_c * res.z0) ** 2)
    g_loss = omega**2 * c_load**2 * 0.5 * res.r_tl

    return LumpedEquivalent(
        frequency=f_res,
        c_line_end=float(c_line_end),
        c_node=float(c_node),
        inductance=float(2.0 / (omega**2 * c_node)),
        g_port=float(g_port),
        g_loss=float(g_loss),
        c_c=res.c_c,
        z0=res.z0,
    )


def loaded_bandwidth(res: ResonatorParams, c_geo: float) -> float:
    """
    Loaded -3 dB bandwidth of the resonator in Hz.
    """
    return lumped_equivalent(res, c_geo).bandwidth
