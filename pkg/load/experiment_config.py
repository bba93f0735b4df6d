"""
Experiment configuration: the device table in lab units, converted to SI
domain objects at this boundary.
"""

import copy
import hashlib
import json
import os
import numpy as np

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from auxiliaries.units import (
    coulomb_to_mev_per_v,
    db_to_linear,
    dbm_to_watt,
    farad_to_ff,
    ghz_to_hz,
    hz_to_ghz,
    joule_to_two_tc_ghz,
    linear_to_db,
    us_to_s,
)
from metrics import AmplifierStage, NoiseChain, noise_temperature, quantum_limit
from network import ResonatorParams
from qdot import DqdParams
from steady_state import SolverConfig

from .config_error import ConfigError
from .grids import LinearGrid, StepGrid, number

REFERENCE_PROFILE_PATH = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
    "data",
    "profiles",
    "table_i.json",
)

# Significant digits kept when echoing SI values back in lab units
ECHO_DIGITS = 10


def load_reference_profile() -> Dict[str, Any]:
    """
    Load the reference device table that backs every missing configuration key.
    """
    with open(REFERENCE_PROFILE_PATH, "r") as json_file:
        return json.load(json_file)


def merge_onto(base: Dict[str, Any], overrides: Dict[str, Any], path: str = "") -> Dict[str, Any]:
    """
    Recursively merge overrides onto a copy of base; unknown keys are rejected.
    """
    merged = copy.deepcopy(base)
    for key, value in overrides.items():
        field = f"{path}.{key}" if path else key
        if key not in base:
            raise ConfigError(field, "unknown configuration key")
        if isinstance(base[key], dict) and isinstance(value, dict):
            merged[key] = merge_onto(base[key], value, field)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _echo(value: float) -> float:
    return float(f"{value:.{ECHO_DIGITS}g}")


def _section(raw: Dict[str, Any], key: str) -> Dict[str, Any]:
    section = raw.get(key)
    if not isinstance(section, dict):
        raise ConfigError(key, f"expected a section, got {section!r}")
    return section


def _float_list(raw: Dict[str, Any], key: str, path: str) -> Tuple[float, ...]:
    values = raw.get(key)
    field = f"{path}.{key}"
    if not isinstance(values, list) or len(values) == 0:
        raise ConfigError(field, "expected a non-empty list")
    parsed = tuple(number({key: v}, key, path) for v in values)
    if any(v <= 0 for v in parsed):
        raise ConfigError(field, "all values must be positive")
    return parsed


@dataclass(frozen=True)
class ContourSettings:
    power_dbm: float
    t_amb: float
    basis_snr_n_dbhz: Optional[float]
    reference_t_n: float
    t_sys_grid: LinearGrid
    t_int_us_grid: LinearGrid


@dataclass(frozen=True)
class LinecutSettings:
    offset_mv_grid: LinearGrid
    power_dbm: float


@dataclass(frozen=True)
class PlanningSettings:
    target_snr_db: float
    t_int: float
    t_amb_electronics: float
    snr_n_dbhz: float
    reference_t_n: float
    fdma_power_dbm: float


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Fully validated experiment configuration in SI units.

    Attributes:
    -----------
    dqd : DqdParams
        Device parameters.
    resonator : ResonatorParams
        Resonator parameters (not yet calibrated).
    noise : NoiseChain
        Readout chain referred to the sample.
    quantum_limited : Tuple[bool, ...]
        Per stage, whether its noise temperature is the quantum limit h f / k.
    t_n_override : float, optional
        Fixed system noise temperature in K replacing the chain estimate.
    measured_t_n : float
        Measured system noise temperature in K (overlay only).
    solver : SolverConfig
        Fixed-point iteration settings.
    frequency_grid : LinearGrid
        Readout frequencies in GHz.
    power_grid : StepGrid
        Source powers in dBm.
    t_int : Tuple[float, ...]
        Integration times in s.
    contour, linecut, planning :
        Settings of the corresponding commands.
    detuning_uev_grid : LinearGrid
        Detuning grid of the energy-level table in micro eV.
    amplitude_mv_grid : LinearGrid
        Drive amplitudes of the capacitance table in mV.
    adiabaticity_factors : Tuple[float, ...]
        Adiabaticity factors of the capacitance table.
    """

    dqd: DqdParams
    resonator: ResonatorParams
    noise: NoiseChain
    quantum_limited: Tuple[bool, ...]
    t_n_override: Optional[float]
    measured_t_n: float
    solver: SolverConfig
    frequency_grid: LinearGrid
    power_grid: StepGrid
    t_int: Tuple[float, ...]
    contour: ContourSettings
    linecut: LinecutSettings
    planning: PlanningSettings
    detuning_uev_grid: LinearGrid
    amplitude_mv_grid: LinearGrid
    adiabaticity_factors: Tuple[float, ...]

    @classmethod
    def from_dict(cls, raw: Dict[str, Any]) -> "ExperimentConfig":
        """
        Validate a complete configuration document in lab units.

        Parameters:
        -----------
        raw : Dict[str, Any]
            Document with all sections of the reference profile.

        Returns:
        --------
        ExperimentConfig

        Raises:
        -------
        ConfigError
            Naming the dotted path of the first invalid entry.
        """
        dqd_raw = _section(raw, "dqd")
        try:
            dqd = DqdParams.from_lab_units(
                two_tc_over_h_ghz=number(dqd_raw, "two_tc_over_h_ghz", "dqd"),
                lever_arm_mev_per_v=number(dqd_raw, "lever_arm_mev_per_v", "dqd"),
                c_geo_ff=number(dqd_raw, "c_geo_ff", "dqd"),
                g_factor=number(dqd_raw, "g_factor", "dqd"),
                b_field_t=number(dqd_raw, "b_field_t", "dqd"),
            )
        except ValueError as e:
            raise ConfigError("dqd", str(e)) from e

        res_raw = _section(raw, "resonator")
        try:
            resonator = ResonatorParams.from_lab_units(
                z_tl_ohm=number(res_raw, "z_tl_ohm", "resonator"),
                z0_ohm=number(res_raw, "z0_ohm", "resonator"),
                c_c_ff=number(res_raw, "c_c_ff", "resonator"),
                r_tl_ohm=number(res_raw, "r_tl_ohm", "resonator"),
                f_bare_ghz=number(res_raw, "f_bare_ghz", "resonator"),
            )
        except ValueError as e:
            raise ConfigError("resonator", str(e)) from e

        noise_raw = _section(raw, "noise")
        stages, quantum_limited = cls._parse_stages(
            noise_raw.get("stages"), resonator.bare_resonance_target
        )
        try:
            noise = NoiseChain(t_amb=number(noise_raw, "t_amb_k", "noise"), stages=stages)
        except ValueError as e:
            raise ConfigError("noise.t_amb_k", str(e)) from e
        t_n_override = None
        if noise_raw.get("t_n_k") is not None:
            t_n_override = number(noise_raw, "t_n_k", "noise")
            if not t_n_override > 0:
                raise ConfigError("noise.t_n_k", "noise temperature must be positive")
        measured_t_n = number(noise_raw, "measured_t_n_k", "noise")

        solver_raw = _section(raw, "solver")
        try:
            solver = SolverConfig(
                relaxation=number(solver_raw, "relaxation", "solver"),
                rel_tol=number(solver_raw, "rel_tol", "solver"),
                max_iter=int(number(solver_raw, "max_iter", "solver")),
                continuation=bool(solver_raw.get("continuation", True)),
            )
        except ValueError as e:
            raise ConfigError("solver", str(e)) from e

        sweep_raw = _section(raw, "sweep")
        frequency_grid = LinearGrid.from_dict(
            sweep_raw.get("frequency_ghz"), "sweep.frequency_ghz"
        )
        if not frequency_grid.start > 0:
            raise ConfigError("sweep.frequency_ghz.start", "frequencies must be positive")
        power_grid = StepGrid.from_dict(sweep_raw.get("power_dbm"), "sweep.power_dbm")
        t_int = tuple(us_to_s(t) for t in _float_list(sweep_raw, "t_int_us", "sweep"))

        contour_raw = _section(raw, "contour")
        basis = contour_raw.get("basis_snr_n_dbhz")
        contour = ContourSettings(
            power_dbm=number(contour_raw, "power_dbm", "contour"),
            t_amb=number(contour_raw, "t_amb_k", "contour"),
            basis_snr_n_dbhz=None if basis is None else number(contour_raw, "basis_snr_n_dbhz", "contour"),
            reference_t_n=number(contour_raw, "reference_t_n_k", "contour"),
            t_sys_grid=LinearGrid.from_dict(contour_raw.get("t_sys_k"), "contour.t_sys_k"),
            t_int_us_grid=LinearGrid.from_dict(contour_raw.get("t_int_us"), "contour.t_int_us"),
        )

        linecut_raw = _section(raw, "linecut")
        linecut = LinecutSettings(
            offset_mv_grid=LinearGrid.from_dict(linecut_raw.get("offset_mv"), "linecut.offset_mv"),
            power_dbm=number(linecut_raw, "power_dbm", "linecut"),
        )

        planning_raw = _section(raw, "planning")
        planning = PlanningSettings(
            target_snr_db=number(planning_raw, "target_snr_db", "planning"),
            t_int=us_to_s(number(planning_raw, "t_int_us", "planning")),
            t_amb_electronics=number(planning_raw, "t_amb_electronics_k", "planning"),
            snr_n_dbhz=number(planning_raw, "snr_n_dbhz", "planning"),
            reference_t_n=number(planning_raw, "reference_t_n_k", "planning"),
            fdma_power_dbm=number(planning_raw, "fdma_power_dbm", "planning"),
        )

        levels_raw = _section(raw, "levels")
        capacitance_raw = _section(raw, "capacitance")

        return cls(
            dqd=dqd,
            resonator=resonator,
            noise=noise,
            quantum_limited=quantum_limited,
            t_n_override=t_n_override,
            measured_t_n=measured_t_n,
            solver=solver,
            frequency_grid=frequency_grid,
            power_grid=power_grid,
            t_int=t_int,
            contour=contour,
            linecut=linecut,
            planning=planning,
            detuning_uev_grid=LinearGrid.from_dict(
                levels_raw.get("detuning_uev"), "levels.detuning_uev"
            ),
            amplitude_mv_grid=LinearGrid.from_dict(
                capacitance_raw.get("amplitude_mv"), "capacitance.amplitude_mv"
            ),
            adiabaticity_factors=_float_list(
                capacitance_raw, "adiabaticity_factors", "capacitance"
            ),
        )

    @staticmethod
    def _parse_stages(
        raw_stages: Any, readout_frequency: float
    ) -> Tuple[Tuple[AmplifierStage, ...], Tuple[bool, ...]]:
        if not isinstance(raw_stages, list):
            raise ConfigError("noise.stages", "expected a list of amplifier stages")
        stages: List[AmplifierStage] = []
        flags: List[bool] = []
        for index, stage in enumerate(raw_stages):
            path = f"noise.stages[{index}]"
            if not isinstance(stage, dict):
                raise ConfigError(path, f"expected a stage section, got {stage!r}")
            is_quantum = bool(stage.get("quantum_limited", False))
            temperature = (
                quantum_limit(readout_frequency) if is_quantum else number(stage, "t_k", path)
            )
            try:
                stages.append(
                    AmplifierStage(
                        name=str(stage.get("name", f"stage{index + 1}")),
                        gain=float(db_to_linear(number(stage, "gain_db", path))),
                        noise_temperature=temperature,
                    )
                )
            except ValueError as e:
                raise ConfigError(path, str(e)) from e
            flags.append(is_quantum)
        return tuple(stages), tuple(flags)

    @property
    def t_n(self) -> float:
        """
        System noise temperature in K: the override if set, else the Friis estimate.
        """
        if self.t_n_override is not None:
            return self.t_n_override
        return noise_temperature(self.noise)

    def frequencies(self) -> np.ndarray:
        return ghz_to_hz(self.frequency_grid.values())

    def powers_dbm(self) -> np.ndarray:
        return self.power_grid.values()

    def powers(self) -> np.ndarray:
        return dbm_to_watt(self.powers_dbm())

    def to_lab_dict(self) -> Dict[str, Any]:
        """
        Echo the configuration in lab units, converted back from SI.
        """
        stages = []
        for stage, is_quantum in zip(self.noise.stages, self.quantum_limited):
            stages.append(
                {
                    "name": stage.name,
                    "gain_db": _echo(float(linear_to_db(stage.gain))),
                    "quantum_limited": is_quantum,
                    "t_k": None if is_quantum else _echo(stage.noise_temperature),
                }
            )
        return {
            "dqd": {
                "two_tc_over_h_ghz": _echo(joule_to_two_tc_ghz(self.dqd.tunnel_coupling)),
                "lever_arm_mev_per_v": _echo(coulomb_to_mev_per_v(self.dqd.lever_arm)),
                "c_geo_ff": _echo(farad_to_ff(self.dqd.c_geo)),
                "g_factor": _echo(self.dqd.g_factor),
                "b_field_t": _echo(self.dqd.b_field),
            },
            "resonator": {
                "z_tl_ohm": _echo(self.resonator.z_tl),
                "z0_ohm": _echo(self.resonator.z0),
                "c_c_ff": _echo(farad_to_ff(self.resonator.c_c)),
                "r_tl_ohm": _echo(self.resonator.r_tl),
                "f_bare_ghz": _echo(hz_to_ghz(self.resonator.bare_resonance_target)),
            },
            "noise": {
                "t_amb_k": _echo(self.noise.t_amb),
                "stages": stages,
                "t_n_k": self.t_n_override,
                "measured_t_n_k": self.measured_t_n,
            },
            "solver": {
                "relaxation": self.solver.relaxation,
                "rel_tol": self.solver.rel_tol,
                "max_iter": self.solver.max_iter,
                "continuation": self.solver.continuation,
            },
            "sweep": {
                "frequency_ghz": self.frequency_grid.to_dict(),
                "power_dbm": self.power_grid.to_dict(),
                "t_int_us": [_echo(t * 1e6) for t in self.t_int],
            },
            "contour": {
                "power_dbm": self.contour.power_dbm,
                "t_amb_k": self.contour.t_amb,
                "basis_snr_n_dbhz": self.contour.basis_snr_n_dbhz,
                "reference_t_n_k": self.contour.reference_t_n,
                "t_sys_k": self.contour.t_sys_grid.to_dict(),
                "t_int_us": self.contour.t_int_us_grid.to_dict(),
            },
            "linecut": {
                "offset_mv": self.linecut.offset_mv_grid.to_dict(),
                "power_dbm": self.linecut.power_dbm,
            },
            "planning": {
                "target_snr_db": self.planning.target_snr_db,
                "t_int_us": _echo(self.planning.t_int * 1e6),
                "t_amb_electronics_k": self.planning.t_amb_electronics,
                "snr_n_dbhz": self.planning.snr_n_dbhz,
                "reference_t_n_k": self.planning.reference_t_n,
                "fdma_power_dbm": self.planning.fdma_power_dbm,
            },
            "levels": {"detuning_uev": self.detuning_uev_grid.to_dict()},
            "capacitance": {
                "amplitude_mv": self.amplitude_mv_grid.to_dict(),
                "adiabaticity_factors": list(self.adiabaticity_factors),
            },
        }

    def config_hash(self) -> str:
        """
        SHA-256 of the canonical (sorted, compact) lab-unit document.
        """
        canonical = json.dumps(self.to_lab_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
