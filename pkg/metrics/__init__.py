from .noise_chain import (
    AmplifierStage,
    NoiseChain,
    noise_contributions,
    noise_density,
    noise_temperature,
    quantum_limit,
)
from .planning import (
    InfeasibleTargetError,
    contour_snr_db,
    excess_snr_db,
    fdma_channel_estimate,
    required_noise_temperature,
)
from .readout_figures import (
    ReadoutFigures,
    ber,
    signal_power,
    snr,
    snr_n_dbhz,
    state_separation,
)


__all__ = [
    "AmplifierStage",
    "InfeasibleTargetError",
    "NoiseChain",
    "ReadoutFigures",
    "ber",
    "contour_snr_db",
    "excess_snr_db",
    "fdma_channel_estimate",
    "noise_contributions",
    "noise_density",
    "noise_temperature",
    "quantum_limit",
    "required_noise_temperature",
    "signal_power",
    "snr",
    "snr_n_dbhz",
    "state_separation",
]
