"""
Harmonic self-consistent solution of the resonator loaded by the DQD.

The quantum capacitance is replaced by its drive-period average, which
depends on the node amplitude, which in turn depends on the capacitance.
A damped fixed-point iteration resolves that loop for whole frequency grids
at once; power axes are walked with continuation.
"""

import logging
import numpy as np

from dataclasses import dataclass
from tqdm import tqdm
from typing import List, Optional, Sequence, Union

from network import ResonatorParams, SParams, node_voltage_transfer, sample_s_params
from qdot import DqdParams, DriveSpec, SpinState, effective_quantum_capacitance
from qdot.quantum_capacitance import effective_quantum_capacitance_fast, state_sign

from .operating_point import OperatingPoint
from .solver_config import SolverConfig, SolverError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OperatingGrid:
    """
    Operating points of one state and power over a frequency grid.

    All array attributes share the shape of frequency.
    """

    frequency: np.ndarray
    p_rf: float
    state: SpinState
    v_node: np.ndarray
    c_q_eff: np.ndarray
    s_params: SParams
    iterations: np.ndarray
    converged: np.ndarray
    detuning_offset: float = 0.0

    def __len__(self) -> int:
        return self.frequency.size

    @property
    def s21(self) -> np.ndarray:
        return np.asarray(self.s_params.s21)

    def point(self, index: int) -> OperatingPoint:
        return OperatingPoint(
            frequency=float(self.frequency[index]),
            p_rf=self.p_rf,
            state=self.state,
            v_node=complex(self.v_node[index]),
            c_q_eff=float(self.c_q_eff[index]),
            s_params=self.s_params.at(index),
            iterations=int(self.iterations[index]),
            converged=bool(self.converged[index]),
            detuning_offset=self.detuning_offset,
        )

    def points(self) -> List[OperatingPoint]:
        return [self.point(i) for i in range(len(self))]


def drive_average(
    dqd: DqdParams,
    state: SpinState,
    amplitude: np.ndarray,
    frequency: np.ndarray,
    detuning_offset: float = 0.0,
) -> np.ndarray:
    """
    Drive-averaged capacitance for node amplitudes on a grid.

    Uses the elliptic-integral identity at zero static detuning and falls back
    to per-point quadrature otherwise.
    """
    if detuning_offset == 0.0:
        return np.asarray(effective_quantum_capacitance_fast(dqd, amplitude, state))
    return np.array(
        [
            effective_quantum_capacitance(
                dqd, DriveSpec(float(a), float(f), detuning_offset), state
            )
            for a, f in zip(amplitude, frequency)
        ]
    )


def solve_frequency_grid(
    dqd: DqdParams,
    res: ResonatorParams,
    state: SpinState,
    frequencies: Union[float, Sequence[float], np.ndarray],
    p_rf: float,
    cfg: SolverConfig,
    warm_start: Optional[Union[float, np.ndarray]] = None,
    detuning_offset: float = 0.0,
) -> OperatingGrid:
    """
    Solve the self-consistent operating point at every frequency of a grid.

    Each grid point iterates x <- x + lambda (C_q,eff(|V_node(x)|) - x) on its
    own; lambda halves for a point whose residual changes sign, and a point
    stops once |residual| <= rel_tol * beta^2 / (4 t_c). Points that hit the
    iteration cap keep their best iterate and are flagged.

    Parameters:
    -----------
    dqd : DqdParams
        Device parameters.
    res : ResonatorParams
        Calibrated resonator parameters.
    state : SpinState
        Spin state of DQD2.
    frequencies : float or array-like
        Readout frequencies in Hz.
    p_rf : float
        Source power in W.
    cfg : SolverConfig
        Iteration settings.
    warm_start : float or np.ndarray, optional
        Initial capacitance per grid point; beta^2 / (4 t_c) if omitted.
    detuning_offset : float, optional
        Static detuning epsilon_0 in J (default is 0).

    Returns:
    --------
    OperatingGrid
    """
    if p_rf < 0:
        raise SolverError(f"RF power must be non-negative, got {p_rf} W.")
    freqs = np.atleast_1d(np.asarray(frequencies, dtype=float))
    c0 = dqd.small_signal_capacitance
    sign = state_sign(state)

    def evaluate(capacitance: np.ndarray, f: np.ndarray):
        v_node = node_voltage_transfer(res, dqd.c_geo + capacitance, f, p_rf, dqd.c_geo)
        target = drive_average(dqd, state, np.abs(v_node), f, detuning_offset)
        return v_node, target

    if sign == 0.0:
        # Triplets carry no quantum capacitance: one linear solve
        capacitance = np.zeros_like(freqs)
        v_node, _ = evaluate(capacitance, freqs)
        return OperatingGrid(
            frequency=freqs,
            p_rf=p_rf,
            state=state,
            v_node=v_node,
            c_q_eff=capacitance,
            s_params=sample_s_params(res, dqd.c_geo, dqd.c_geo, freqs),
            iterations=np.ones(freqs.size, dtype=int),
            converged=np.ones(freqs.size, dtype=bool),
            detuning_offset=detuning_offset,
        )

    x = np.broadcast_to(
        sign * c0 if warm_start is None else np.asarray(warm_start, dtype=float),
        freqs.shape,
    ).copy()
    relaxation = np.full(freqs.shape, cfg.relaxation)
    previous_residual = np.zeros(freqs.shape)
    best_x, best_v = x.copy(), np.zeros(freqs.shape, dtype=complex)
    best_error = np.full(freqs.shape, np.inf)
    iterations = np.zeros(freqs.shape, dtype=int)
    converged = np.zeros(freqs.shape, dtype=bool)

    for iteration in range(1, cfg.max_iter + 1):
        active = np.flatnonzero(~converged)
        if active.size == 0:
            break
        v_node, target = evaluate(x[active], freqs[active])
        residual = target - x[active]
        error = np.abs(residual) / c0
        iterations[active] = iteration

        improved = error < best_error[active]
        best_error[active[improved]] = error[improved]
        best_x[active[improved]] = x[active][improved]
        best_v[active[improved]] = v_node[improved]

        done = error <= cfg.rel_tol
        converged[active[done]] = True

        # Oscillating points get a smaller step
        flipped = residual * previous_residual[active] < 0
        relaxation[active[flipped]] *= 0.5
        previous_residual[active] = residual

        moving = active[~done]
        x[moving] += relaxation[moving] * residual[~done]

    if not converged.all():
        logger.warning(
            f"{np.count_nonzero(~converged)} of {freqs.size} points did not converge "
            f"within {cfg.max_iter} iterations ({state.value}, P = {p_rf:.3g} W)."
        )

    return OperatingGrid(
        frequency=freqs,
        p_rf=p_rf,
        state=state,
        v_node=best_v,
        c_q_eff=best_x,
        s_params=sample_s_params(res, dqd.c_geo, dqd.c_geo + best_x, freqs),
        iterations=iterations,
        converged=converged,
        detuning_offset=detuning_offset,
    )


def solve_operating_point(
    dqd: DqdParams,
    res: ResonatorParams,
    state: SpinState,
    f: float,
    p_rf: float,
    cfg: SolverConfig,
    warm_start: Optional[float] = None,
    detuning_offset: float = 0.0,
) -> OperatingPoint:
    """
    Solve the self-consistent operating point at a single frequency.
    """
    grid = solve_frequency_grid(
        dqd, res, state, [f], p_rf, cfg, warm_start, detuning_offset
    )
    return grid.point(0)


def _check_powers(powers: Sequence[float]) -> np.ndarray:
    powers = np.asarray(powers, dtype=float)
    if powers.ndim != 1 or powers.size == 0:
        raise SolverError("A power sweep needs a non-empty list of powers.")
    if np.any(np.diff(powers) <= 0):
        raise SolverError("Powers of a sweep must be strictly ascending.")
    if powers[0] < 0:
        raise SolverError(f"RF power must be non-negative, got {powers[0]} W.")
    return powers


def _continuation(
    dqd: DqdParams,
    res: ResonatorParams,
    state: SpinState,
    frequencies: np.ndarray,
    powers: Sequence[float],
    cfg: SolverConfig,
    detuning_offset: float,
    progress: bool,
    desc: str,
) -> List[OperatingGrid]:
    grids: List[OperatingGrid] = []
    warm = None
    for p_rf in tqdm(powers, desc=desc, disable=not progress):
        grid = solve_frequency_grid(
            dqd, res, state, frequencies, float(p_rf), cfg, warm, detuning_offset
        )
        grids.append(grid)
        if cfg.continuation:
            warm = grid.c_q_eff
    return grids


def power_sweep_grid(
    dqd: DqdParams,
    res: ResonatorParams,
    state: SpinState,
    frequencies: Union[Sequence[float], np.ndarray],
    powers: Sequence[float],
    cfg: SolverConfig,
    detuning_offset: float = 0.0,
    progress: bool = False,
) -> List[OperatingGrid]:
    """
    Ascending power sweep over a frequency grid with continuation.

    Every power warm-starts from the previous power's converged capacitance
    (grid point by grid point), so the low-power branch is followed through
    any bistable region.

    Parameters:
    -----------
    powers : Sequence[float]
        Strictly ascending source powers in W.
    progress : bool, optional
        Show a progress bar over the power axis (default is False).

    Returns:
    --------
    List[OperatingGrid]
        One grid per power, in the order of powers.
    """
    powers = _check_powers(powers)
    frequencies = np.atleast_1d(np.asarray(frequencies, dtype=float))
    return _continuation(
        dqd, res, state, frequencies, powers, cfg, detuning_offset, progress,
        desc=f"Power sweep {state.short_label}",
    )


def power_sweep(
    dqd: DqdParams,
    res: ResonatorParams,
    state: SpinState,
    f: float,
    powers: Sequence[float],
    cfg: SolverConfig,
    detuning_offset: float = 0.0,
) -> List[OperatingPoint]:
    """
    Ascending power sweep at one frequency with continuation.
    """
    grids = power_sweep_grid(dqd, res, state, [f], powers, cfg, detuning_offset)
    return [grid.point(0) for grid in grids]


@dataclass(frozen=True)
class HysteresisScan:
    """
    Up and down power sweeps over the same grid.

    Attributes:
    -----------
    up : List[OperatingGrid]
        Ascending sweep, one grid per power.
    down : List[OperatingGrid]
        Descending sweep, reordered to ascending power for comparison.
    disagreement : np.ndarray
        Boolean mask (powers x frequencies) where both branches differ.
    """

    up: List[OperatingGrid]
    down: List[OperatingGrid]
    disagreement: np.ndarray

    @property
    def bistable(self) -> bool:
        return bool(self.disagreement.any())


def hysteresis_scan(
    dqd: DqdParams,
    res: ResonatorParams,
    state: SpinState,
    frequencies: Union[Sequence[float], np.ndarray],
    powers: Sequence[float],
    cfg: SolverConfig,
    detuning_offset: float = 0.0,
    threshold: Optional[float] = None,
) -> HysteresisScan:
    """
    Sweep power up and down and report where the two branches disagree.

    Parameters:
    -----------
    threshold : float, optional
        Absolute capacitance difference in F that counts as disagreement;
        defaults to 10 * rel_tol * beta^2 / (4 t_c).

    Returns:
    --------
    HysteresisScan
    """
    powers = _check_powers(powers)
    frequencies = np.atleast_1d(np.asarray(frequencies, dtype=float))
    if threshold is None:
        threshold = 10.0 * cfg.rel_tol * dqd.small_signal_capacitance

    up = _continuation(
        dqd, res, state, frequencies, powers, cfg, detuning_offset, False, "Sweep up"
    )
    down = _continuation(
        dqd, res, state, frequencies, powers[::-1], cfg, detuning_offset, False, "Sweep down"
    )[::-1]
    disagreement = np.array(
        [np.abs(u.c_q_eff - d.c_q_eff) > threshold for u, d in zip(up, down)]
    )
    if disagreement.any():
        logger.info(
            f"Hysteresis: branches differ at {np.count_nonzero(disagreement)} "
            f"of {disagreement.size} points."
        )
    return HysteresisScan(up=up, down=down, disagreement=disagreement)
