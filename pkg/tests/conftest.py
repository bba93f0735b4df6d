import pytest

from load import ConfigFromProfile
from network import ResonatorParams, calibrated
from qdot import DqdParams
from steady_state import SolverConfig


@pytest.fixture(scope="session")
def dqd() -> DqdParams:
    return DqdParams.from_lab_units(
        two_tc_over_h_ghz=14.1, lever_arm_mev_per_v=102.0, c_geo_ff=1.9
    )


@pytest.fixture(scope="session")
def bare_resonator() -> ResonatorParams:
    return ResonatorParams.from_lab_units(
        z_tl_ohm=4500.0, z0_ohm=50.0, c_c_ff=0.32, r_tl_ohm=17.0, f_bare_ghz=6.91
    )


@pytest.fixture(scope="session")
def resonator(bare_resonator, dqd) -> ResonatorParams:
    # Calibration bisects over full peak searches; share one per session
    return calibrated(bare_resonator, dqd.c_geo)


@pytest.fixture(scope="session")
def solver_config() -> SolverConfig:
    return SolverConfig()


@pytest.fixture(scope="session")
def reference_config():
    return ConfigFromProfile("table-i").get_config()
