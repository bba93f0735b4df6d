import json
import pytest

from interface import ResultTable
from interface.cli import EXIT_IO, EXIT_OK, EXIT_SOLVER, EXIT_VALIDATION, build_parser, main, resolve_threads
from load import ConfigError

SMALL_GRID = ["--power-dbm", "-140:-120:20", "--quiet"]


def write_config(tmp_path, document):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(document))
    return str(path)


def test_levels_writes_csv(tmp_path):
    out = tmp_path / "levels.csv"
    assert main(["levels", "--out", str(out), "--quiet"]) == EXIT_OK
    table = ResultTable.read_csv(str(out))
    assert table.name == "levels"
    assert len(table) == 201
    assert table.units["c_q_ground_af"] == "aF"


def test_doc_format(tmp_path):
    out = tmp_path / "budget.json"
    assert main(["budget", "--out", str(out), "--format", "doc", "--quiet"]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["table"] == "budget"
    assert len(doc["data"]) == 1


def test_noise_temperature_override(tmp_path):
    out = tmp_path / "budget.csv"
    assert main(["budget", "--out", str(out), "--tn-kelvin", "0.35", "--quiet"]) == EXIT_OK
    table = ResultTable.read_csv(str(out))
    assert table.data["t_n_k"].iloc[0] == pytest.approx(0.35)
    assert table.provenance["config"]["noise"]["t_n_k"] == 0.35


def test_freq_shift_with_power_override(tmp_path):
    out = tmp_path / "shift.csv"
    assert main(["freq-shift", "--out", str(out), "--threads", "2"] + SMALL_GRID) == EXIT_OK
    table = ResultTable.read_csv(str(out))
    assert list(table.data["p_rf_dbm"]) == [-140, -120]


def test_invalid_config_exits_with_validation_code(tmp_path):
    path = write_config(tmp_path, {"sweep": {"power_dbm": {"start": -140, "stop": -60, "step": -5}}})
    assert main(["levels", "--config", path, "--out", str(tmp_path / "x.csv"), "--quiet"]) == EXIT_VALIDATION
    assert main(["levels", "--out", str(tmp_path / "x.csv"), "--power-dbm", "a:b", "--quiet"]) == EXIT_VALIDATION


def test_missing_config_exits_with_io_code(tmp_path):
    missing = str(tmp_path / "missing.json")
    assert main(["levels", "--config", missing, "--out", str(tmp_path / "x.csv"), "--quiet"]) == EXIT_IO
    unwritable = str(tmp_path / "no_such_dir" / "x.csv")
    assert main(["levels", "--out", unwritable, "--quiet"]) == EXIT_IO


def test_unconverged_rows_exit_with_solver_code(tmp_path):
    path = write_config(tmp_path, {"solver": {"max_iter": 1}})
    out = tmp_path / "shift.csv"
    assert main(["freq-shift", "--config", path, "--out", str(out)] + SMALL_GRID) == EXIT_SOLVER
    # The table is still written
    assert ResultTable.read_csv(str(out)).flagged_fraction > 0.1


def test_thread_count_resolution(monkeypatch):
    monkeypatch.delenv("QDOTSIM_THREADS", raising=False)
    assert resolve_threads(None) == 1
    assert resolve_threads(3) == 3
    monkeypatch.setenv("QDOTSIM_THREADS", "4")
    assert resolve_threads(None) == 4
    monkeypatch.setenv("QDOTSIM_THREADS", "many")
    with pytest.raises(ConfigError):
        resolve_threads(None)
    with pytest.raises(ConfigError):
        resolve_threads(0)


def test_parser_requires_subcommand():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_render(tmp_path):
    table_path = tmp_path / "levels.csv"
    image_path = tmp_path / "levels.png"
    assert main(["levels", "--out", str(table_path), "--quiet"]) == EXIT_OK
    assert main(["render", "--input", str(table_path), "--out", str(image_path), "--quiet"]) == EXIT_OK
    assert image_path.stat().st_size > 0


@pytest.mark.parametrize("command", ["contour", "capacitance"])
def test_render_other_tables(tmp_path, command):
    table_path = tmp_path / f"{command}.csv"
    image_path = tmp_path / f"{command}.png"
    assert main([command, "--out", str(table_path), "--quiet"]) == EXIT_OK
    assert main(["render", "--input", str(table_path), "--out", str(image_path), "--quiet"]) == EXIT_OK
    assert image_path.exists()
