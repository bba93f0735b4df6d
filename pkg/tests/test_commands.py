import numpy as np
import pytest

import interface.commands as commands
from interface import COMMANDS, calibrated_resonator, readout_frequencies
from interface.commands import cmd_budget, cmd_capacitance, cmd_contour, cmd_levels, cmd_signal, cmd_snr
from load import ConfigFromProfile


def small_config(**sections):
    overrides = {
        "sweep": {
            "frequency_ghz": {"start": 6.900, "stop": 6.915, "points": 61, "log": False},
            "power_dbm": {"start": -140.0, "stop": -100.0, "step": 20.0},
        },
        "linecut": {"offset_mv": {"start": -1.0, "stop": 1.0, "points": 5, "log": False}},
    }
    overrides.update(sections)
    return ConfigFromProfile("table-i", overrides).get_config()


@pytest.fixture(scope="module")
def config():
    return small_config()


def test_calibration_is_cached_per_config(config):
    first = calibrated_resonator(config)
    assert first.is_calibrated
    assert calibrated_resonator(config) is first


def test_provenance_in_every_table(config):
    table = cmd_levels(config)
    assert table.provenance["config_hash"] == config.config_hash()
    assert table.provenance["tool_version"] == "0.1.0"
    assert table.provenance["config"]["dqd"]["two_tc_over_h_ghz"] == 14.1


def test_levels(config):
    table = cmd_levels(config)
    assert len(table) == 201
    centre = table.data.iloc[100]
    assert centre["detuning_uev"] == pytest.approx(0.0, abs=1e-9)
    assert centre["c_q_ground_af"] == pytest.approx(14.29, rel=1e-3)
    assert centre["c_q_excited_af"] == pytest.approx(-14.29, rel=1e-3)
    assert centre["e_excited_uev"] - centre["e_ground_uev"] == pytest.approx(58.31, rel=1e-3)


def test_capacitance(config):
    table = cmd_capacitance(config)
    assert len(table) == 3 * 101
    assert table.data["standard_agrees"].all()
    at_rest = table.data[table.data["amplitude_mv"] == 0.0]
    # Small-signal value scales as 1 / t_c
    assert at_rest["c_q_eff_af"].is_monotonic_decreasing
    for _, curve in table.data.groupby("adiabaticity_factor"):
        assert curve["c_q_eff_af"].is_monotonic_decreasing


def test_freq_shift(config):
    table = COMMANDS["freq-shift"](config)
    data = table.data
    assert list(data["p_rf_dbm"]) == [-140.0, -120.0, -100.0]
    assert 4.0 <= data["delta_f_mhz"].iloc[0] <= 6.0
    assert data["f_res_t_ghz"].iloc[0] == pytest.approx(6.91, abs=1e-4)
    assert np.all(np.diff(data["delta_f_mhz"]) <= 1e-3)
    assert not data["peak_at_edge"].any()
    assert data["converged"].all()


def test_s21_map_parallel_matches_serial(config):
    serial = COMMANDS["s21-map"](config, threads=1)
    parallel = COMMANDS["s21-map"](config, threads=3)
    assert len(serial) == 2 * 3 * 61
    numeric = ["s21_mag_db", "s21_phase_deg", "c_q_eff_af"]
    assert np.allclose(serial.data[numeric], parallel.data[numeric], rtol=1e-5)
    assert (serial.data["state"] == parallel.data["state"]).all()
    assert set(serial.data["state"]) == {"S", "T"}


def test_readout_frequencies(config):
    res = calibrated_resonator(config)
    readouts = readout_frequencies(config, res)
    assert readouts["case1"] == pytest.approx(6.91e9, abs=1e4)
    assert 6.905e9 < readouts["case2"] < readouts["case1"]


def test_signal_and_snr(config):
    signal = cmd_signal(config)
    data = signal.data
    assert (data["separation_case1"] >= 0).all()
    assert (data["separation_case1"] <= 4).all()
    # Small-signal separation approaches the |T> peak transmission
    assert data["separation_norm_case1"].iloc[0] == pytest.approx(0.925, abs=0.05)

    snr = cmd_snr(config)
    columns = snr.data.columns
    assert {"snr_db_0p1us", "snr_db_1us", "snr_db_10us", "ber_1us"} <= set(columns)
    assert np.allclose(snr.data["snr_db_10us"] - snr.data["snr_db_1us"], 10.0)
    assert np.allclose(
        snr.data["snr_n_dbhz"] - snr.data["snr_n_measured_dbhz"], 10.0 * np.log10(0.46 / config.t_n)
    )


def test_signal_forwards_worker_count(config, monkeypatch):
    serial = cmd_signal(config).data
    seen = []
    original = commands.sweep_states

    def recording(*args, **kwargs):
        seen.append(kwargs["threads"])
        return original(*args, **kwargs)

    monkeypatch.setattr(commands, "sweep_states", recording)
    parallel = cmd_signal(config, threads=2).data
    assert seen == [2]
    assert np.allclose(parallel["separation_case1"], serial["separation_case1"], rtol=1e-9)
    assert np.allclose(parallel["separation_case2"], serial["separation_case2"], rtol=1e-9)


def test_snr_ceiling_over_power_grid():
    config = small_config(
        sweep={
            "frequency_ghz": {"start": 6.900, "stop": 6.915, "points": 3, "log": False},
            "power_dbm": {"start": -140.0, "stop": -60.0, "step": 5.0},
        },
        noise={"t_n_k": 0.35},
    )
    data = cmd_snr(config).data
    assert data["snr_n_dbhz"].max() == pytest.approx(95.0, abs=2.0)
    assert data["snr_db_1us"].max() == pytest.approx(35.0, abs=2.0)
    # Signal saturates above the knee
    p_sig = data["p_sig_dbm"].to_numpy()
    assert np.all(np.abs(np.diff(p_sig[-4:])) < 1.0)
    assert p_sig[-1] > p_sig[0]


def test_contour(config):
    table = cmd_contour(config)
    assert len(table) == 50 * 21
    row = table.data[(table.data["t_sys_k"] == 22.0) & np.isclose(table.data["t_int_us"], 1.0)]
    assert row["snr_db"].iloc[0] == pytest.approx(89.0 + 10.0 * np.log10(0.46 / 26.0) - 60.0)
    assert table.flag_column is None


def test_budget(config):
    row = cmd_budget(config).data.iloc[0]
    assert row["t_n_chain_k"] == pytest.approx(0.3635, abs=1e-3)
    assert row["quantum_limit_k"] == pytest.approx(0.33163, abs=1e-4)
    assert row["max_t_n_k"] == pytest.approx(25.87, abs=0.05)
    assert row["max_t_sys_k"] == pytest.approx(21.87, abs=0.05)
    assert row["excess_snr_db"] == pytest.approx(17.5)
    assert row["fdma_channel_mhz"] == pytest.approx(row["delta_f_fdma_mhz"] + row["bandwidth_mhz"])
    assert row["adiabatic_regime"] == "adiabatic"
    assert row["f_halfwave_ghz"] == pytest.approx(9.346, rel=5e-3)


def test_linecut(config):
    table = COMMANDS["linecut"](config)
    data = table.data
    assert len(data) == 5
    centre = data.iloc[2]
    assert centre["c_q_eff_af"] == data["c_q_eff_af"].max()
    assert np.allclose(data["c_q_eff_af"], data["c_q_eff_af"][::-1].to_numpy(), rtol=1e-4)
    assert data["converged"].all()
