from .lumped import (
    LumpedEquivalent,
    loaded_bandwidth,
    lumped_equivalent,
    lumped_line_capacitance,
    lumped_line_inductance,
    lumped_resonance_estimate,
)
from .resonator import (
    CalibrationError,
    ResonatorParams,
    calibrate_resonator,
    calibrated,
    find_resonance,
    incident_voltage,
    input_impedance,
    node_voltage_transfer,
    sample_network,
    sample_s_params,
)
from .s_params import SParams, s_params
from .two_port import (
    NetworkError,
    TwoPortAbcd,
    cascade,
    element_series_impedance,
    element_shunt_admittance,
    element_tline,
)


__all__ = [
    "CalibrationError",
    "LumpedEquivalent",
    "NetworkError",
    "ResonatorParams",
    "SParams",
    "TwoPortAbcd",
    "calibrate_resonator",
    "calibrated",
    "cascade",
    "element_series_impedance",
    "element_shunt_admittance",
    "element_tline",
    "find_resonance",
    "incident_voltage",
    "input_impedance",
    "loaded_bandwidth",
    "lumped_equivalent",
    "lumped_line_capacitance",
    "lumped_line_inductance",
    "lumped_resonance_estimate",
    "node_voltage_transfer",
    "s_params",
    "sample_network",
    "sample_s_params",
]
