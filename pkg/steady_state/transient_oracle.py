"""
Time-domain reference for the harmonic solver.

Integrates the two-node lumped equivalent of the resonator with a
charge-based nonlinear capacitor at the readout node, then projects the
readout node voltage on the drive over whole periods (fixed-step
fourth-order Runge-Kutta).

The capacitor looks up the instantaneous quantum capacitance C(v) at the
momentary detuning and stores the charge

    q(v) = ( C(v) v + integral_0^v C(x) dx ) / 2

Under a drive v = V cos(t) the integral charge alone has a fundamental
capacitance of 2 <C sin^2>, the chord charge C(v) v one of 2 <C cos^2>;
their mean carries exactly the period average <C> the harmonic solver uses.
The incremental capacitance is dq/dv = C(v) + v C'(v) / 2.

State variables: v1 (port-1 end node), v2 (readout node), i (inductor current)

    C_n dv1/dt          = C_c dVs/dt + G_port Vs - G_n v1 - i
    (C_n + dq/dv) dv2/dt = i - G_n v2
    L di/dt             = v1 - v2
"""

import logging
import math
import numpy as np

from dataclasses import dataclass
from typing import Optional

from network import ResonatorParams, incident_voltage, lumped_equivalent
from qdot import DqdParams, SpinState
from qdot.quantum_capacitance import state_sign

from .solver_config import SolverError

logger = logging.getLogger(__name__)

MIN_STEPS_PER_PERIOD = 256
ENERGY_BOUND_FACTOR = 10.0


class TransientInstabilityError(Exception):
    """
    Exception raised when the integrated energy diverges (step-size instability).

    Attributes:
    ----------
    message : str
        Explanation of the error.
    """


@dataclass(frozen=True)
class TransientResult:
    """
    Fundamental response extracted from the transient run.

    Attributes:
    -----------
    v_node : complex
        Fundamental phasor of the readout node voltage in V.
    s21 : complex
        Transmission derived from the port-2 load current.
    third_harmonic : float
        |V(3 omega)| / |V(omega)| at the readout node.
    periods_settle : int
        Periods discarded for ring-up.
    periods_measure : int
        Periods used for the Fourier projection.
    steps_per_period : int
        Integration steps per RF period.
    """

    v_node: complex
    s21: complex
    third_harmonic: float
    periods_settle: int
    periods_measure: int
    steps_per_period: int


def minimum_settle_periods(res: ResonatorParams, c_geo: float) -> int:
    """
    Ring-up allowance of 20 Q_loaded / pi periods.
    """
    return int(math.ceil(20.0 * lumped_equivalent(res, c_geo).loaded_q / math.pi))


def transient_oracle(
    dqd: DqdParams,
    res: ResonatorParams,
    state: SpinState,
    f: float,
    p_rf: float,
    periods_settle: Optional[int] = None,
    periods_measure: int = 64,
    steps_per_period: int = MIN_STEPS_PER_PERIOD,
    linear_capacitance: Optional[float] = None,
    detuning_offset: float = 0.0,
) -> TransientResult:
    """
    Integrate the lumped circuit to steady state and extract the fundamental.

    Parameters:
    -----------
    dqd : DqdParams
        Device parameters.
    res : ResonatorParams
        Resonator parameters (calibrated on the fly if needed).
    state : SpinState
        Spin state of DQD2.
    f : float
        Drive frequency in Hz.
    p_rf : float
        Source power in W.
    periods_settle : int, optional
        Ring-up periods; defaults to and may not undercut 20 Q_loaded / pi.
    periods_measure : int, optional
        Periods of the Fourier window (default is 64).
    steps_per_period : int, optional
        RK4 steps per RF period, at least 256.
    linear_capacitance : float, optional
        Replace the nonlinear characteristic by this constant capacitance in F.
    detuning_offset : float, optional
        Static detuning epsilon_0 in J.

    Returns:
    --------
    TransientResult

    Raises:
    -------
    TransientInstabilityError
        If the stored energy exceeds ten times the energy the source offered.
    """
    if p_rf < 0:
        raise SolverError(f"RF power must be non-negative, got {p_rf} W.")
    if steps_per_period < MIN_STEPS_PER_PERIOD:
        raise SolverError(
            f"Need at least {MIN_STEPS_PER_PERIOD} steps per period, got {steps_per_period}."
        )
    minimum = minimum_settle_periods(res, dqd.c_geo)
    if periods_settle is None:
        periods_settle = minimum
    elif periods_settle < minimum:
        raise SolverError(
            f"Settling needs at least {minimum} periods (20 Q / pi), got {periods_settle}."
        )
    if periods_measure < 1:
        raise SolverError(f"Need at least one measured period, got {periods_measure}.")

    if p_rf == 0.0:
        return TransientResult(0j, 0j, 0.0, periods_settle, periods_measure, steps_per_period)

    eq = lumped_equivalent(res, dqd.c_geo)
    omega = 2.0 * math.pi * f
    dt = 1.0 / (f * steps_per_period)
    v_source = 2.0 * incident_voltage(res, p_rf)

    c_node, g_node, inductance = eq.c_node, eq.g_node, eq.inductance
    c_q_peak = state_sign(state) * dqd.small_signal_capacitance
    inv_scale = 1.0 / (2.0 * dqd.tunnel_coupling)
    beta = dqd.lever_arm

    # Source tables on half steps of one period
    half_steps = 2 * steps_per_period
    phase = [omega * k * 0.5 * dt for k in range(half_steps)]
    cos_table = [math.cos(p) for p in phase]
    sin_table = [math.sin(p) for p in phase]
    source = [
        v_source * (eq.g_port * c - eq.c_c * omega * s) for c, s in zip(cos_table, sin_table)
    ]

    slope = beta * inv_scale

    def capacitance(v2: float) -> float:
        if linear_capacitance is not None:
            return c_node + linear_capacitance
        u = (detuning_offset + beta * v2) * inv_scale
        w = 1.0 + u * u
        # C(v) + v C'(v) / 2 with C = c_q_peak / w^1.5
        return c_node + c_q_peak * (w - 1.5 * u * slope * v2) / w**2.5

    def derivatives(v1: float, v2: float, i: float, s: float):
        return (
            (s - g_node * v1 - i) / c_node,
            (i - g_node * v2) / capacitance(v2),
            (v1 - v2) / inductance,
        )

    v1 = v2 = i = 0.0
    fundamental_re = fundamental_im = third_re = third_im = 0.0
    total_periods = periods_settle + periods_measure

    for period in range(total_periods):
        measuring = period >= periods_settle
        for n in range(steps_per_period):
            if measuring:
                fundamental_re += v2 * cos_table[2 * n]
                fundamental_im -= v2 * sin_table[2 * n]
                k3 = (6 * n) % half_steps
                third_re += v2 * cos_table[k3]
                third_im -= v2 * sin_table[k3]

            s0 = source[2 * n]
            s_half = source[2 * n + 1]
            s1 = source[(2 * n + 2) % half_steps]

            a1, b1, c1 = derivatives(v1, v2, i, s0)
            a2, b2, c2 = derivatives(
                v1 + 0.5 * dt * a1, v2 + 0.5 * dt * b1, i + 0.5 * dt * c1, s_half
            )
            a3, b3, c3 = derivatives(
                v1 + 0.5 * dt * a2, v2 + 0.5 * dt * b2, i + 0.5 * dt * c2, s_half
            )
            a4, b4, c4 = derivatives(v1 + dt * a3, v2 + dt * b3, i + dt * c3, s1)

            v1 += dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
            v2 += dt / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
            i += dt / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4)

        energy = 0.5 * c_node * (v1 * v1 + v2 * v2) + 0.5 * inductance * i * i
        offered = ENERGY_BOUND_FACTOR * p_rf * (period + 1) / f
        if not math.isfinite(energy) or energy > offered:
            raise TransientInstabilityError(
                f"Stored energy {energy:.3g} J exceeds {offered:.3g} J after "
                f"{period + 1} periods; reduce the step size."
            )

    samples = periods_measure * steps_per_period
    v_node = 2.0 / samples * complex(fundamental_re, fundamental_im)
    v_third = 2.0 / samples * complex(third_re, third_im)

    # Port-2 current through C_c into the load
    i_out = v_node / (res.z0 + 1.0 / (1j * omega * eq.c_c))
    s21 = 2.0 * res.z0 * i_out / v_source

    logger.debug(
        f"Transient run: |V| = {abs(v_node):.4g} V, |S21| = {abs(s21):.4g} after "
        f"{total_periods} periods of {steps_per_period} steps."
    )
    return TransientResult(
        v_node=v_node,
        s21=s21,
        third_harmonic=float(abs(v_third) / abs(v_node)) if v_node != 0 else 0.0,
        periods_settle=periods_settle,
        periods_measure=periods_measure,
        steps_per_period=steps_per_period,
    )
