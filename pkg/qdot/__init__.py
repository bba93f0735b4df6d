from .adiabaticity import (
    AdiabaticRegime,
    AdiabaticityReport,
    adiabaticity_factor,
    classify_adiabaticity,
    tunnel_coupling_for_factor,
)
from .dqd_params import READOUT_BASIS, DqdParams, DriveSpec, SpinState
from .energy_levels import singlet_energies, triplet_energies
from .quantum_capacitance import (
    ClosedFormCheck,
    closed_form_check,
    effective_quantum_capacitance,
    effective_quantum_capacitance_closed_form,
    effective_quantum_capacitance_fast,
    quantum_capacitance,
)


__all__ = [
    "AdiabaticRegime",
    "AdiabaticityReport",
    "ClosedFormCheck",
    "DqdParams",
    "DriveSpec",
    "READOUT_BASIS",
    "SpinState",
    "adiabaticity_factor",
    "classify_adiabaticity",
    "closed_form_check",
    "effective_quantum_capacitance",
    "effective_quantum_capacitance_closed_form",
    "effective_quantum_capacitance_fast",
    "quantum_capacitance",
    "singlet_energies",
    "tunnel_coupling_for_factor",
    "triplet_energies",
]
