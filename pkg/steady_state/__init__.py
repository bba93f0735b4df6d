from .harmonic_solver import (
    HysteresisScan,
    OperatingGrid,
    drive_average,
    hysteresis_scan,
    power_sweep,
    power_sweep_grid,
    solve_frequency_grid,
    solve_operating_point,
)
from .operating_point import OperatingPoint
from .solver_config import SolverConfig, SolverError
from .transient_oracle import (
    TransientInstabilityError,
    TransientResult,
    minimum_settle_periods,
    transient_oracle,
)


__all__ = [
    "HysteresisScan",
    "OperatingGrid",
    "OperatingPoint",
    "SolverConfig",
    "SolverError",
    "TransientInstabilityError",
    "TransientResult",
    "drive_average",
    "hysteresis_scan",
    "minimum_settle_periods",
    "power_sweep",
    "power_sweep_grid",
    "solve_frequency_grid",
    "solve_operating_point",
    "transient_oracle",
]
