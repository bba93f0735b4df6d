from dataclasses import dataclass
from enum import Enum

from auxiliaries.units import ff_to_farad, mev_per_v_to_coulomb, two_tc_ghz_to_joule


class SpinState(Enum):
    """
    The five low-energy levels of the double quantum dot.
    """

    SINGLET_GROUND = "SingletGround"
    SINGLET_EXCITED = "SingletExcited"
    TRIPLET_ZERO = "TripletZero"
    TRIPLET_MINUS = "TripletMinus"
    TRIPLET_PLUS = "TripletPlus"

    @property
    def is_singlet(self) -> bool:
        return self in (SpinState.SINGLET_GROUND, SpinState.SINGLET_EXCITED)

    @property
    def short_label(self) -> str:
        """
        Label used in result tables ("S" and "T" for the readout basis).
        """
        return {
            SpinState.SINGLET_GROUND: "S",
            SpinState.SINGLET_EXCITED: "S*",
            SpinState.TRIPLET_ZERO: "T0",
            SpinState.TRIPLET_MINUS: "T",
            SpinState.TRIPLET_PLUS: "T+",
        }[self]


# Computational basis of the readout, |S> and |T>
READOUT_BASIS = (SpinState.SINGLET_GROUND, SpinState.TRIPLET_MINUS)


@dataclass(frozen=True)
class DqdParams:
    """
    Device parameters of the double quantum dot in SI units.

    Attributes:
    -----------
    tunnel_coupling : float
        Interdot tunnel coupling t_c in J.
    lever_arm : float
        Gate lever arm beta = |e| C_g / C_sigma in C (detuning energy per gate volt).
    c_geo : float
        Geometric capacitance of the dot gate in F.
    g_factor : float
        Electron g-factor, only used for triplet energy levels.
    b_field : float
        Magnetic field in T, only used for triplet energy levels.
    """

    tunnel_coupling: float
    lever_arm: float
    c_geo: float
    g_factor: float = 2.0
    b_field: float = 0.0

    def __post_init__(self) -> None:
        if not self.tunnel_coupling > 0:
            raise ValueError(
                f"Tunnel coupling must be positive, got {self.tunnel_coupling} J."
            )
        if not self.lever_arm > 0:
            raise ValueError(f"Lever arm must be positive, got {self.lever_arm} C.")
        if self.c_geo < 0:
            raise ValueError(
                f"Geometric capacitance must be non-negative, got {self.c_geo} F."
            )

    @classmethod
    def from_lab_units(
        cls,
        two_tc_over_h_ghz: float,
        lever_arm_mev_per_v: float,
        c_geo_ff: float,
        g_factor: float = 2.0,
        b_field_t: float = 0.0,
    ) -> "DqdParams":
        """
        Build the parameters from the units used in the device tables.

        Parameters:
        -----------
        two_tc_over_h_ghz : float
            Singlet gap frequency 2t_c/h in GHz (e.g. 14.1).
        lever_arm_mev_per_v : float
            Lever arm in meV/V (e.g. 102).
        c_geo_ff : float
            Geometric capacitance in fF (e.g. 1.9).
        g_factor : float, optional
            Electron g-factor (default is 2).
        b_field_t : float, optional
            Magnetic field in T (default is 0).

        Returns:
        --------
        DqdParams
        """
        return cls(
            tunnel_coupling=two_tc_ghz_to_joule(two_tc_over_h_ghz),
            lever_arm=mev_per_v_to_coulomb(lever_arm_mev_per_v),
            c_geo=ff_to_farad(c_geo_ff),
            g_factor=float(g_factor),
            b_field=float(b_field_t),
        )

    @property
    def small_signal_capacitance(self) -> float:
        """
        Peak quantum capacitance beta^2 / (4 t_c) of the singlet ground state.
        """
        return self.lever_arm**2 / (4.0 * self.tunnel_coupling)


@dataclass(frozen=True)
class DriveSpec:
    """
    Sinusoidal detuning drive at the readout gate.

    Attributes:
    -----------
    amplitude : float
        Gate voltage amplitude V_A in V.
    frequency : float
        Drive frequency in Hz.
    dc_detuning_offset : float
        Static detuning epsilon_0 in J (0 at the interdot transition).
    """

    amplitude: float
    frequency: float
    dc_detuning_offset: float = 0.0

    def __post_init__(self) -> None:
        if self.amplitude < 0:
            raise ValueError(f"Drive amplitude must be >= 0, got {self.amplitude} V.")
        if not self.frequency > 0:
            raise ValueError(f"Drive frequency must be > 0, got {self.frequency} Hz.")
