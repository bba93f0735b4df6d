"""
Figure commands: each turns an ExperimentConfig into one ResultTable.
"""

import logging
import threading
import numpy as np
import pandas as pd

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Any, Callable, Dict, List, Sequence

from auxiliaries.peak_finding import interpolate_peak
from auxiliaries.units import (
    amplitude_to_db,
    dbm_to_watt,
    farad_to_af,
    hz_to_ghz,
    joule_to_two_tc_ghz,
    joule_to_uev,
    linear_to_db,
    s_to_us,
    uev_to_joule,
    watt_to_dbm,
)
from load import ExperimentConfig
from metrics import (
    ber,
    contour_snr_db,
    excess_snr_db,
    fdma_channel_estimate,
    noise_contributions,
    noise_temperature,
    quantum_limit,
    required_noise_temperature,
    signal_power,
    snr_n_dbhz,
    state_separation,
)
from network import (
    ResonatorParams,
    calibrate_resonator,
    find_resonance,
    incident_voltage,
    loaded_bandwidth,
    lumped_equivalent,
)
from qdot import (
    READOUT_BASIS,
    SpinState,
    adiabaticity_factor,
    classify_adiabaticity,
    closed_form_check,
    quantum_capacitance,
    singlet_energies,
    triplet_energies,
    tunnel_coupling_for_factor,
)
from steady_state import OperatingGrid, power_sweep_grid, solve_operating_point

from . import __version__
from .result_table import ResultTable

logger = logging.getLogger(__name__)

STATE_S, STATE_T = READOUT_BASIS

_calibration_cache: Dict[str, ResonatorParams] = {}
_calibration_lock = threading.Lock()


def calibrated_resonator(cfg: ExperimentConfig) -> ResonatorParams:
    """
    Calibrated resonator of a configuration, computed once per config hash.
    """
    key = cfg.config_hash()
    with _calibration_lock:
        if key not in _calibration_cache:
            f_halfwave = calibrate_resonator(cfg.resonator, cfg.dqd.c_geo)
            _calibration_cache[key] = cfg.resonator.with_halfwave(f_halfwave)
        return _calibration_cache[key]


def make_provenance(cfg: ExperimentConfig) -> Dict[str, Any]:
    return {
        "tool_version": __version__,
        "config_hash": cfg.config_hash(),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "config": cfg.to_lab_dict(),
    }


def run_parallel(tasks: Sequence[Callable[[], Any]], threads: int) -> List[Any]:
    """
    Run independent tasks on a thread pool and return results in task order.
    """
    if threads <= 1 or len(tasks) <= 1:
        return [task() for task in tasks]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(lambda task: task(), tasks))


@dataclass(frozen=True)
class StateSweep:
    """
    Power sweep of one state over a frequency grid, arrays of shape (powers, frequencies).
    """

    state: SpinState
    frequencies: np.ndarray
    powers: np.ndarray
    s21: np.ndarray
    c_q_eff: np.ndarray
    v_node: np.ndarray
    iterations: np.ndarray
    converged: np.ndarray


def _stack(state: SpinState, powers: np.ndarray, chunks: List[List[OperatingGrid]]) -> StateSweep:
    # chunks: per frequency chunk, one grid per power
    def gather(attribute: str) -> np.ndarray:
        return np.array(
            [
                np.concatenate([getattr(chunk[p], attribute) for chunk in chunks])
                for p in range(len(powers))
            ]
        )

    return StateSweep(
        state=state,
        frequencies=np.concatenate([chunk[0].frequency for chunk in chunks]),
        powers=powers,
        s21=gather("s21"),
        c_q_eff=gather("c_q_eff"),
        v_node=gather("v_node"),
        iterations=gather("iterations"),
        converged=gather("converged"),
    )


def sweep_states(
    cfg: ExperimentConfig,
    res: ResonatorParams,
    frequencies: np.ndarray,
    powers: np.ndarray,
    states: Sequence[SpinState] = READOUT_BASIS,
    threads: int = 1,
    progress: bool = False,
) -> Dict[SpinState, StateSweep]:
    """
    Power sweeps with continuation for several states, frequency chunks in parallel.
    """
    chunks = np.array_split(frequencies, max(1, min(threads, frequencies.size)))
    tasks, keys = [], []
    for state in states:
        for chunk in chunks:
            keys.append(state)
            tasks.append(
                lambda state=state, chunk=chunk: power_sweep_grid(
                    cfg.dqd, res, state, chunk, powers, cfg.solver,
                    progress=progress and threads <= 1,
                )
            )
    results = run_parallel(tasks, threads)
    return {
        state: _stack(state, powers, [r for k, r in zip(keys, results) if k is state])
        for state in states
    }


def cmd_s21_map(cfg: ExperimentConfig, threads: int = 1, progress: bool = False) -> ResultTable:
    """
    |S21| and phase of S21 versus frequency for both readout states at every power.
    """
    res = calibrated_resonator(cfg)
    frequencies, powers_dbm = cfg.frequencies(), cfg.powers_dbm()
    sweeps = sweep_states(cfg, res, frequencies, cfg.powers(), threads=threads, progress=progress)

    frames = []
    n_p, n_f = len(powers_dbm), len(frequencies)
    for state, sweep in sweeps.items():
        frames.append(
            pd.DataFrame(
                {
                    "p_rf_dbm": np.repeat(powers_dbm, n_f),
                    "state": state.short_label,
                    "frequency_ghz": np.tile(hz_to_ghz(frequencies), n_p),
                    "s21_mag_db": amplitude_to_db(sweep.s21).ravel(),
                    "s21_phase_deg": np.degrees(np.angle(sweep.s21)).ravel(),
                    "c_q_eff_af": farad_to_af(sweep.c_q_eff).ravel(),
                    "v_node_uv": (np.abs(sweep.v_node) * 1e6).ravel(),
                    "iterations": sweep.iterations.ravel(),
                    "converged": sweep.converged.ravel(),
                }
            )
        )
    data = pd.concat(frames).sort_values(["p_rf_dbm", "state", "frequency_ghz"], kind="stable")
    units = {
        "p_rf_dbm": "dBm",
        "state": "label",
        "frequency_ghz": "GHz",
        "s21_mag_db": "dB",
        "s21_phase_deg": "deg",
        "c_q_eff_af": "aF",
        "v_node_uv": "uV",
        "iterations": "1",
        "converged": "bool",
    }
    return ResultTable("s21_map", data, units, make_provenance(cfg))


def cmd_freq_shift(cfg: ExperimentConfig, threads: int = 1, progress: bool = False) -> ResultTable:
    """
    Resonance shift between the |T> and |S> states versus power.

    Peaks are located on the frequency grid by three-point quadratic interpolation.
    """
    res = calibrated_resonator(cfg)
    frequencies, powers_dbm = cfg.frequencies(), cfg.powers_dbm()
    sweeps = sweep_states(cfg, res, frequencies, cfg.powers(), threads=threads, progress=progress)
    f_ghz = hz_to_ghz(frequencies)

    rows = []
    for index, p_dbm in enumerate(powers_dbm):
        peak_t = interpolate_peak(f_ghz, np.abs(sweeps[STATE_T].s21[index]))
        peak_s = interpolate_peak(f_ghz, np.abs(sweeps[STATE_S].s21[index]))
        rows.append(
            {
                "p_rf_dbm": p_dbm,
                "f_res_t_ghz": peak_t.position,
                "f_res_s_ghz": peak_s.position,
                "delta_f_mhz": (peak_t.position - peak_s.position) * 1e3,
                "peak_at_edge": peak_t.at_edge or peak_s.at_edge,
                "converged": bool(
                    sweeps[STATE_S].converged[index].all()
                    and sweeps[STATE_T].converged[index].all()
                ),
            }
        )
    units = {
        "p_rf_dbm": "dBm",
        "f_res_t_ghz": "GHz",
        "f_res_s_ghz": "GHz",
        "delta_f_mhz": "MHz",
        "peak_at_edge": "bool",
        "converged": "bool",
    }
    return ResultTable("freq_shift", pd.DataFrame(rows), units, make_provenance(cfg))


def readout_frequencies(cfg: ExperimentConfig, res: ResonatorParams) -> Dict[str, float]:
    """
    Readout frequencies of both signal scenarios in Hz.

    case1 reads out at the |T> resonance. case2 reads out halfway between the |T> and
    the |S> resonance at the lowest configured power, fixed for all powers.
    """
    dqd = cfg.dqd
    f_t = find_resonance(res, dqd.c_geo, dqd.c_geo)
    f_s_small_signal = find_resonance(res, dqd.c_geo, dqd.c_geo + dqd.small_signal_capacitance)
    lowest = solve_operating_point(dqd, res, STATE_S, f_s_small_signal, cfg.powers()[0], cfg.solver)
    f_s = find_resonance(res, dqd.c_geo, dqd.c_geo + lowest.c_q_eff)
    return {"case1": f_t, "case2": 0.5 * (f_t + f_s)}


def signal_sweep(
    cfg: ExperimentConfig,
    res: ResonatorParams,
    powers: np.ndarray,
    threads: int = 1,
    progress: bool = False,
) -> Dict[str, Any]:
    """
    State separation and signal power of both scenarios over a power list.
    """
    readouts = readout_frequencies(cfg, res)
    frequencies = np.array([readouts["case1"], readouts["case2"]])
    sweeps = sweep_states(cfg, res, frequencies, powers, threads=threads, progress=progress)
    s21_s, s21_t = sweeps[STATE_S].s21, sweeps[STATE_T].s21

    separation = state_separation(s21_s, s21_t)
    p_sig = signal_power(powers[:, None], separation)
    reference = np.abs(s21_t[0, 0]) ** 2
    return {
        "readouts": readouts,
        "separation": separation,
        "separation_norm": separation / reference,
        "p_sig": p_sig,
        "converged": sweeps[STATE_S].converged.all(axis=1),
    }


def cmd_signal(cfg: ExperimentConfig, threads: int = 1, progress: bool = False) -> ResultTable:
    """
    Separation factor and received signal power versus power for both scenarios.
    """
    res = calibrated_resonator(cfg)
    sweep = signal_sweep(cfg, res, cfg.powers(), threads, progress)
    data = pd.DataFrame(
        {
            "p_rf_dbm": cfg.powers_dbm(),
            "f_readout_case1_ghz": hz_to_ghz(sweep["readouts"]["case1"]),
            "separation_case1": sweep["separation"][:, 0],
            "separation_norm_case1": sweep["separation_norm"][:, 0],
            "p_sig_case1_dbm": watt_to_dbm(sweep["p_sig"][:, 0]),
            "f_readout_case2_ghz": hz_to_ghz(sweep["readouts"]["case2"]),
            "separation_case2": sweep["separation"][:, 1],
            "separation_norm_case2": sweep["separation_norm"][:, 1],
            "p_sig_case2_dbm": watt_to_dbm(sweep["p_sig"][:, 1]),
            "converged": sweep["converged"],
        }
    )
    units = {
        "p_rf_dbm": "dBm",
        "f_readout_case1_ghz": "GHz",
        "separation_case1": "1",
        "separation_norm_case1": "1",
        "p_sig_case1_dbm": "dBm",
        "f_readout_case2_ghz": "GHz",
        "separation_case2": "1",
        "separation_norm_case2": "1",
        "p_sig_case2_dbm": "dBm",
        "converged": "bool",
    }
    return ResultTable("signal", data, units, make_provenance(cfg))


def _t_int_label(t_int: float) -> str:
    return f"{s_to_us(t_int):g}us".replace(".", "p")


def cmd_snr(cfg: ExperimentConfig, threads: int = 1, progress: bool = False) -> ResultTable:
    """
    Normalised SNR versus power (case-1 placement) at the configured noise temperature.

    Adds the measured-noise overlay and the SNR and BER at every configured
    integration time.
    """
    res = calibrated_resonator(cfg)
    sweep = signal_sweep(cfg, res, cfg.powers(), threads, progress)
    p_sig = sweep["p_sig"][:, 0]
    t_n = cfg.t_n
    snr_n = snr_n_dbhz(p_sig, t_n)

    columns = {
        "p_rf_dbm": cfg.powers_dbm(),
        "p_sig_dbm": watt_to_dbm(p_sig),
        "t_n_k": np.full(p_sig.shape, t_n),
        "snr_n_dbhz": snr_n,
        "snr_n_measured_dbhz": snr_n_dbhz(p_sig, cfg.measured_t_n),
    }
    units = {
        "p_rf_dbm": "dBm",
        "p_sig_dbm": "dBm",
        "t_n_k": "K",
        "snr_n_dbhz": "dB Hz",
        "snr_n_measured_dbhz": "dB Hz",
    }
    for t_int in cfg.t_int:
        label = _t_int_label(t_int)
        snr_db = snr_n + linear_to_db(t_int)
        columns[f"snr_db_{label}"] = snr_db
        columns[f"ber_{label}"] = ber(np.power(10.0, snr_db / 10.0))
        units[f"snr_db_{label}"] = "dB"
        units[f"ber_{label}"] = "1"
    columns["converged"] = sweep["converged"]
    units["converged"] = "bool"
    return ResultTable("snr", pd.DataFrame(columns), units, make_provenance(cfg))


def cmd_contour(cfg: ExperimentConfig, threads: int = 1, progress: bool = False) -> ResultTable:
    """
    SNR over a grid of electronics noise temperature and integration time.

    The normalised SNR basis is the configured value or, if unset, the model's
    case-1 signal at the contour power against the reference noise temperature.
    """
    settings = cfg.contour
    basis = settings.basis_snr_n_dbhz
    if basis is None:
        res = calibrated_resonator(cfg)
        p_sig = signal_sweep(cfg, res, np.array([dbm_to_watt(settings.power_dbm)]))["p_sig"][0, 0]
        basis = float(snr_n_dbhz(p_sig, settings.reference_t_n))

    t_sys, t_int_us = np.meshgrid(
        settings.t_sys_grid.values(), settings.t_int_us_grid.values(), indexing="ij"
    )
    snr_db = contour_snr_db(basis, settings.reference_t_n, t_sys, settings.t_amb, t_int_us * 1e-6)
    data = pd.DataFrame(
        {
            "t_sys_k": t_sys.ravel(),
            "t_int_us": t_int_us.ravel(),
            "t_n_k": (t_sys + settings.t_amb).ravel(),
            "snr_db": snr_db.ravel(),
            "ber": ber(np.power(10.0, snr_db.ravel() / 10.0)),
            "basis_snr_n_dbhz": basis,
        }
    )
    units = {
        "t_sys_k": "K",
        "t_int_us": "us",
        "t_n_k": "K",
        "snr_db": "dB",
        "ber": "1",
        "basis_snr_n_dbhz": "dB Hz",
    }
    return ResultTable("contour", data, units, make_provenance(cfg), flag_column=None)


def cmd_linecut(cfg: ExperimentConfig, threads: int = 1, progress: bool = False) -> ResultTable:
    """
    Effective capacitance and transmission versus static detuning offset at the |T> resonance.
    """
    res = calibrated_resonator(cfg)
    dqd = cfg.dqd
    f_readout = find_resonance(res, dqd.c_geo, dqd.c_geo)
    p_rf = float(dbm_to_watt(cfg.linecut.power_dbm))
    offsets_mv = cfg.linecut.offset_mv_grid.values()
    detunings = dqd.lever_arm * offsets_mv * 1e-3

    tasks = [
        lambda eps=eps: solve_operating_point(
            dqd, res, STATE_S, f_readout, p_rf, cfg.solver, detuning_offset=float(eps)
        )
        for eps in detunings
    ]
    points = run_parallel(tasks, threads)
    reference = solve_operating_point(dqd, res, STATE_T, f_readout, p_rf, cfg.solver)

    s21_s = np.array([p.s21 for p in points])
    data = pd.DataFrame(
        {
            "offset_mv": offsets_mv,
            "detuning_uev": joule_to_uev(detunings),
            "c_q_eff_af": farad_to_af(np.array([p.c_q_eff for p in points])),
            "s21_s_mag_db": amplitude_to_db(s21_s),
            "s21_t_mag_db": float(amplitude_to_db(reference.s21)),
            "delta_s21_db": amplitude_to_db(s21_s) - amplitude_to_db(reference.s21),
            "v_out_uv": np.abs(s21_s) * incident_voltage(res, p_rf) * 1e6,
            "converged": [p.converged for p in points],
        }
    )
    units = {
        "offset_mv": "mV",
        "detuning_uev": "ueV",
        "c_q_eff_af": "aF",
        "s21_s_mag_db": "dB",
        "s21_t_mag_db": "dB",
        "delta_s21_db": "dB",
        "v_out_uv": "uV",
        "converged": "bool",
    }
    return ResultTable("linecut", data, units, make_provenance(cfg))


def cmd_budget(cfg: ExperimentConfig, threads: int = 1, progress: bool = False) -> ResultTable:
    """
    Noise budget, noise-temperature headroom and FDMA channel estimate in one row.
    """
    res = calibrated_resonator(cfg)
    dqd, planning = cfg.dqd, cfg.planning
    f_res = res.bare_resonance_target

    row: Dict[str, Any] = {"t_amb_k": cfg.noise.t_amb}
    units: Dict[str, str] = {"t_amb_k": "K"}
    for name, referred in noise_contributions(cfg.noise):
        row[f"t_{name.lower()}_referred_k"] = referred
        units[f"t_{name.lower()}_referred_k"] = "K"

    t_n_chain = noise_temperature(cfg.noise)
    max_t_n, max_t_sys = required_noise_temperature(
        planning.snr_n_dbhz,
        planning.reference_t_n,
        planning.target_snr_db,
        planning.t_int,
        planning.t_amb_electronics,
    )
    excess = excess_snr_db(planning.snr_n_dbhz, planning.target_snr_db, planning.t_int)

    # Shift at the FDMA power from a two-frequency solve around the resonances
    p_fdma = float(dbm_to_watt(planning.fdma_power_dbm))
    f_s_guess = find_resonance(res, dqd.c_geo, dqd.c_geo + dqd.small_signal_capacitance)
    point = solve_operating_point(dqd, res, STATE_S, f_s_guess, p_fdma, cfg.solver)
    shift = find_resonance(res, dqd.c_geo, dqd.c_geo) - find_resonance(
        res, dqd.c_geo, dqd.c_geo + point.c_q_eff
    )
    equivalent = lumped_equivalent(res, dqd.c_geo)
    bandwidth = loaded_bandwidth(res, dqd.c_geo)
    report = classify_adiabaticity(adiabaticity_factor(dqd, f_res))

    row.update(
        {
            "t_n_chain_k": t_n_chain,
            "t_n_k": cfg.t_n,
            "quantum_limit_k": quantum_limit(f_res),
            "measured_t_n_k": cfg.measured_t_n,
            "measured_over_chain": cfg.measured_t_n / t_n_chain,
            "excess_snr_db": excess,
            "n0_scale": max_t_n / planning.reference_t_n,
            "max_t_n_k": max_t_n,
            "max_t_sys_k": max_t_sys,
            "f_res_ghz": hz_to_ghz(f_res),
            "f_halfwave_ghz": hz_to_ghz(res.f_halfwave),
            "loaded_q": equivalent.loaded_q,
            "bandwidth_mhz": bandwidth / 1e6,
            "delta_f_fdma_mhz": max(shift, 0.0) / 1e6,
            "fdma_channel_mhz": fdma_channel_estimate(max(shift, 0.0), bandwidth) / 1e6,
            "adiabaticity_factor": report.factor,
            "adiabatic_regime": report.regime.value,
            "converged": point.converged,
        }
    )
    units.update(
        {
            "t_n_chain_k": "K",
            "t_n_k": "K",
            "quantum_limit_k": "K",
            "measured_t_n_k": "K",
            "measured_over_chain": "1",
            "excess_snr_db": "dB",
            "n0_scale": "1",
            "max_t_n_k": "K",
            "max_t_sys_k": "K",
            "f_res_ghz": "GHz",
            "f_halfwave_ghz": "GHz",
            "loaded_q": "1",
            "bandwidth_mhz": "MHz",
            "delta_f_fdma_mhz": "MHz",
            "fdma_channel_mhz": "MHz",
            "adiabaticity_factor": "1",
            "adiabatic_regime": "label",
            "converged": "bool",
        }
    )
    return ResultTable("budget", pd.DataFrame([row]), units, make_provenance(cfg))


def cmd_levels(cfg: ExperimentConfig, threads: int = 1, progress: bool = False) -> ResultTable:
    """
    Singlet and triplet energies and the singlet quantum capacitance versus detuning.
    """
    dqd = cfg.dqd
    detuning_uev = cfg.detuning_uev_grid.values()
    detuning = uev_to_joule(detuning_uev)
    e_ground, e_excited = singlet_energies(dqd, detuning)
    e_t0, e_tminus, e_tplus = triplet_energies(dqd, detuning)
    data = pd.DataFrame(
        {
            "detuning_uev": detuning_uev,
            "e_ground_uev": joule_to_uev(e_ground),
            "e_excited_uev": joule_to_uev(e_excited),
            "e_t0_uev": joule_to_uev(e_t0),
            "e_tminus_uev": joule_to_uev(e_tminus),
            "e_tplus_uev": joule_to_uev(e_tplus),
            "c_q_ground_af": farad_to_af(quantum_capacitance(dqd, SpinState.SINGLET_GROUND, detuning)),
            "c_q_excited_af": farad_to_af(quantum_capacitance(dqd, SpinState.SINGLET_EXCITED, detuning)),
        }
    )
    units = {column: "ueV" for column in data.columns if column.endswith("_uev")}
    units.update({"c_q_ground_af": "aF", "c_q_excited_af": "aF"})
    return ResultTable("levels", data, units, make_provenance(cfg), flag_column=None)


def cmd_capacitance(cfg: ExperimentConfig, threads: int = 1, progress: bool = False) -> ResultTable:
    """
    Effective quantum capacitance versus drive amplitude for several adiabaticity factors.

    The tunnel coupling of each curve is chosen so that (2 t_c / h) / f_r equals the
    factor at the configured resonance. Both closed-form readings are reported
    next to the quadrature.
    """
    f_res = cfg.resonator.bare_resonance_target
    amplitudes_mv = cfg.amplitude_mv_grid.values()

    def curve(factor: float) -> List[Dict[str, Any]]:
        dqd = replace(cfg.dqd, tunnel_coupling=tunnel_coupling_for_factor(f_res, factor))
        rows = []
        for amplitude_mv in amplitudes_mv:
            check = closed_form_check(dqd, float(amplitude_mv) * 1e-3)
            rows.append(
                {
                    "adiabaticity_factor": factor,
                    "two_tc_over_h_ghz": joule_to_two_tc_ghz(dqd.tunnel_coupling),
                    "amplitude_mv": amplitude_mv,
                    "c_q_eff_af": farad_to_af(check.quadrature),
                    "c_q_closed_af": farad_to_af(check.standard),
                    "c_q_printed_re_af": farad_to_af(check.printed.real),
                    "c_q_printed_im_af": farad_to_af(check.printed.imag),
                    "standard_agrees": check.standard_agrees,
                    "printed_agrees": check.printed_agrees,
                }
            )
        return rows

    tasks = [lambda factor=factor: curve(factor) for factor in cfg.adiabaticity_factors]
    rows = [row for rows in run_parallel(tasks, threads) for row in rows]
    units = {
        "adiabaticity_factor": "1",
        "two_tc_over_h_ghz": "GHz",
        "amplitude_mv": "mV",
        "c_q_eff_af": "aF",
        "c_q_closed_af": "aF",
        "c_q_printed_re_af": "aF",
        "c_q_printed_im_af": "aF",
        "standard_agrees": "bool",
        "printed_agrees": "bool",
    }
    return ResultTable(
        "capacitance", pd.DataFrame(rows), units, make_provenance(cfg), flag_column="standard_agrees"
    )


COMMANDS: Dict[str, Callable[..., ResultTable]] = {
    "s21-map": cmd_s21_map,
    "freq-shift": cmd_freq_shift,
    "signal": cmd_signal,
    "snr": cmd_snr,
    "contour": cmd_contour,
    "linecut": cmd_linecut,
    "budget": cmd_budget,
    "levels": cmd_levels,
    "capacitance": cmd_capacitance,
}
