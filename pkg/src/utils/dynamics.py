"""
Dinâmica linear da rede com geradores e armazenamento em droop.

Estado x = [δ (relativos ao gerador 1); ω; E_S], entrada u = [P_ref; P_L]:

    dx/dt = A·x + B·u + c

    A = [[0, T, 0], [−F·G, −Φ, 0], [G̃, 0, 0]]
    B = [[0, 0], [F, −F·H], [0, H2]]
    c = [0; Φ·ω₀·1; 0]

com T = [−1 | I], F = diag(3K_i, 3D_S,j/α_S,j), Φ = diag(K_i/D_G,i, 1/α_S,j)
e G̃ as linhas de G correspondentes ao armazenamento (dE_S/dt = P_S).
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from src.config import (
    BLOWUP_BOUND,
    NADIR_MIXED_TOL,
    NADIR_ZERO_TOL,
    SIM_DT,
    STEADY_SLOPE_TOL,
    STEADY_WINDOW,
)
from src.models.grid import GridModel, ReducedNetwork, StorageParams
from src.models.placement import Distribution
from src.models.simulation import (
    FrequencyMetrics,
    SimulationTrace,
    StateLayout,
    SystemMatrices,
    TransientScenario,
)
from src.utils.errors import (
    ConfigError,
    DimensionMismatchError,
    IntegrationError,
    NumericalError,
)
from src.utils.network import node_layout

logger = logging.getLogger(__name__)

# Passos entre verificações de divergência
_CHECK_EVERY = 1000


# ============================================================================
# MONTAGEM DO SISTEMA
# ============================================================================

def assemble_system(grid: GridModel, reduced: ReducedNetwork,
                    placement: Optional[Distribution] = None,
                    storage: Optional[StorageParams] = None) -> SystemMatrices:
    """
    Monta as matrizes A, B, c e o equilíbrio pré-evento.

    Args:
        grid: Rede elétrica
        reduced: Rede reduzida construída para este mesmo posicionamento
        placement: Distribuição das unidades (k unidades numa barra formam
            um único nó com 1/D = k/D_S)
        storage: Parâmetros de uma unidade de armazenamento

    Returns:
        SystemMatrices com o estado inicial em equilíbrio

    Raises:
        DimensionMismatchError: rede reduzida incompatível com o posicionamento
    """
    layout = node_layout(grid, placement)
    if (reduced.n_g, reduced.n_s, reduced.n_l) != (layout.n_g, layout.n_s, layout.n_l):
        raise DimensionMismatchError(
            f"reduced network has (n_G, n_S, n_L) = {(reduced.n_g, reduced.n_s, reduced.n_l)}, "
            f"placement needs {(layout.n_g, layout.n_s, layout.n_l)}"
        )
    if layout.n_s and storage is None:
        raise DimensionMismatchError("placement has storage nodes but no storage parameters")

    n_g, n_s, n_gs = layout.n_g, layout.n_s, layout.n_gs
    n_d = n_gs - 1
    n_l = layout.n_l
    omega0 = grid.omega0

    gens = grid.generators
    gain_k = np.array([g.swing_gain_k for g in gens])
    damping_g = np.array([g.damping_d for g in gens])
    units = np.array(layout.storage_units, dtype=float)
    if n_s:
        damping_s = storage.damping_d / units
        alpha_s = np.full(n_s, storage.filter_alpha)
    else:
        damping_s = np.zeros(0)
        alpha_s = np.zeros(0)

    f_diag = np.r_[3 * gain_k, 3 * damping_s / alpha_s] if n_s else 3 * gain_k
    phi_diag = np.r_[gain_k / damping_g, 1 / alpha_s] if n_s else gain_k / damping_g
    f_mat = np.diag(f_diag)

    g_w = reduced.g_matrix * grid.p_base
    h = reduced.h_matrix
    t_mat = np.hstack([-np.ones((n_d, 1)), np.eye(n_d)])

    n_x = n_d + n_gs + n_s
    a = np.zeros((n_x, n_x))
    a[:n_d, n_d:n_d + n_gs] = t_mat
    a[n_d:n_d + n_gs, :n_d] = -f_mat @ g_w
    a[n_d:n_d + n_gs, n_d:n_d + n_gs] = -np.diag(phi_diag)
    a[n_d + n_gs:, :n_d] = g_w[n_g:]

    b = np.zeros((n_x, n_gs + n_l))
    b[n_d:n_d + n_gs, :n_gs] = f_mat
    b[n_d:n_d + n_gs, n_gs:] = -f_mat @ h
    b[n_d + n_gs:, n_gs:] = h[n_g:]

    c = np.zeros(n_x)
    c[n_d:n_d + n_gs] = phi_diag * omega0

    # Despacho proporcional à potência nominal; armazenamento com P_ref = 0
    consumption = grid.load_consumption()
    rated = np.array([g.rated_power for g in gens])
    p_ref = np.r_[rated / rated.sum() * consumption.sum(), np.zeros(n_s)]
    load_injection0 = -consumption

    x0 = np.zeros(n_x)
    x0[n_d:n_d + n_gs] = omega0
    if n_d:
        rhs = (p_ref - h @ load_injection0) / grid.p_base
        x0[:n_d] = np.linalg.solve(reduced.g_matrix[1:, :], rhs[1:])

    inertias = np.array([g.rotor_inertia_j for g in gens])
    state_layout = StateLayout(layout.generator_buses, layout.storage_buses)
    system = SystemMatrices(
        a_matrix=a,
        b_matrix=b,
        affine_term=c,
        layout=state_layout,
        omega0=omega0,
        g_matrix=g_w,
        h_matrix=h,
        p_ref=p_ref,
        load_injection0=load_injection0,
        load_buses=layout.load_buses,
        initial_state=x0,
        inertias=inertias,
        generator_inverse_damping=1 / damping_g,
        storage_inverse_damping=1 / damping_s if n_s else np.zeros(0),
    )
    logger.debug("Sistema montado: %d estados, %d entradas", n_x, n_gs + n_l)
    return system


# ============================================================================
# INTEGRAÇÃO
# ============================================================================

def rk4_propagator(a_matrix: np.ndarray, dt: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Matrizes de um passo de Runge-Kutta clássico para dx/dt = A·x + f constante.

    Returns:
        (M, N) tais que x_{k+1} = M·x_k + N·f
    """
    n = a_matrix.shape[0]
    eye = np.eye(n)
    ha = dt * a_matrix
    ha2 = ha @ ha
    ha3 = ha2 @ ha
    ha4 = ha3 @ ha
    m = eye + ha + ha2 / 2 + ha3 / 6 + ha4 / 24
    n_mat = dt * (eye + ha / 2 + ha2 / 6 + ha3 / 24)
    return m, n_mat


def _step_injections(system: SystemMatrices, scenario: TransientScenario, dt: float,
                     n_steps: int, warnings: List[str]) -> Tuple[List[int], List[np.ndarray]]:
    """Pontos de troca da entrada (índices de passo) e a injeção em cada trecho."""
    column = {bus: k for k, bus in enumerate(system.load_buses)}
    onsets = []
    for event in scenario.events:
        if event.bus not in column:
            raise ConfigError(f"event at bus {event.bus}, which is not a load bus")
        index = int(round(event.onset / dt))
        if abs(index * dt - event.onset) > 1e-9 * max(1.0, event.onset):
            message = f"onset {event.onset} s at bus {event.bus} snapped to {index * dt:.9g} s"
            warnings.append(message)
            logger.warning("Início de evento ajustado à grade: %s", message)
        onsets.append((min(index, n_steps), column[event.bus], event.delta_p))

    breakpoints = sorted({0} | {k for k, _, _ in onsets})
    injections = []
    for start in breakpoints:
        injection = system.load_injection0.copy()
        for k, col, delta in onsets:
            if k <= start:
                injection[col] -= delta
        injections.append(injection)
    return breakpoints, injections


def _divergence(system: SystemMatrices, states: np.ndarray, bound: float) -> Optional[int]:
    """Primeira amostra divergente (ou None)."""
    omega = states[:, system.layout.omega]
    with np.errstate(invalid="ignore"):
        bad = (~np.isfinite(states)).any(axis=1) | (np.abs(omega - system.omega0) > bound).any(axis=1)
    hits = np.flatnonzero(bad)
    return int(hits[0]) if hits.size else None


def simulate(system: SystemMatrices, scenario: TransientScenario, dt: float = SIM_DT,
             blowup_bound: float = BLOWUP_BOUND) -> SimulationTrace:
    """
    Integra o transitório a partir do equilíbrio pré-evento.

    Runge-Kutta de 4ª ordem com passo fixo; a entrada é constante por trechos
    e só muda nos instantes de início dos eventos (ajustados à grade de dt).

    Raises:
        IntegrationError: algum |ω − ω₀| excede ``blowup_bound`` ou o estado
            deixa de ser finito
    """
    if not dt > 0:
        raise ConfigError(f"time step must be positive, got {dt}")
    warnings: List[str] = []
    n_steps = int(round(scenario.horizon / dt))
    if n_steps < 1:
        raise ConfigError(f"horizon {scenario.horizon} s is shorter than one step of {dt} s")
    if abs(n_steps * dt - scenario.horizon) > 1e-9 * scenario.horizon:
        warnings.append(f"horizon {scenario.horizon} s rounded to {n_steps * dt:.9g} s")

    breakpoints, injections = _step_injections(system, scenario, dt, n_steps, warnings)
    m, n_mat = rk4_propagator(system.a_matrix, dt)

    n_x = system.a_matrix.shape[0]
    states = np.empty((n_steps + 1, n_x))
    states[0] = system.initial_state
    step_segment = np.zeros(n_steps, dtype=int)
    labels = system.layout.labels()

    ends = breakpoints[1:] + [n_steps]
    checked = 0
    with np.errstate(over="ignore", invalid="ignore"):
        for seg, (start, stop) in enumerate(zip(breakpoints, ends)):
            step_segment[start:stop] = seg
            forcing = n_mat @ (system.b_matrix @ system.input_vector(injections[seg]) + system.affine_term)
            x = states[start]
            for k in range(start, stop):
                x = m @ x + forcing
                states[k + 1] = x
                if k + 1 - checked >= _CHECK_EVERY:
                    _raise_if_divergent(system, states, checked, k + 2, blowup_bound, dt, labels)
                    checked = k + 1
    _raise_if_divergent(system, states, checked, n_steps + 1, blowup_bound, dt, labels)

    # Potência do armazenamento com os limites à direita e à esquerda de cada amostra
    injection_table = np.array(injections)
    right_segment = np.r_[step_segment, step_segment[-1]]
    left_segment = np.r_[step_segment[0], step_segment]
    storage_right = system.storage_power(states, injection_table[right_segment])
    storage_left = system.storage_power(states, injection_table[left_segment])

    times = np.arange(n_steps + 1) * dt
    trace = SimulationTrace(
        times=times,
        states=states,
        layout=system.layout,
        omega0=system.omega0,
        coi_weights=system.inertias / system.inertias.sum(),
        storage_power=storage_right,
        storage_power_left=storage_left,
        scenario_name=scenario.name,
        warnings=warnings,
    )
    _check_steady_state(trace, dt)
    return trace


def _raise_if_divergent(system: SystemMatrices, states: np.ndarray, start: int, stop: int,
                        bound: float, dt: float, labels) -> None:
    row = _divergence(system, states[start:stop], bound)
    if row is None:
        return
    sample = states[start + row]
    with np.errstate(invalid="ignore"):
        deviation = np.where(np.isfinite(sample), 0.0, np.inf)
        omega_slice = system.layout.omega
        deviation[omega_slice] = np.where(
            np.isfinite(sample[omega_slice]), np.abs(sample[omega_slice] - system.omega0), np.inf
        )
    state = labels[int(np.argmax(deviation))]
    time = (start + row) * dt
    raise IntegrationError(
        f"integration diverged at t = {time:.6g} s: state {state} exceeds the blow-up bound "
        f"of {bound:.6g} rad/s", state=state, time=time
    )


def _check_steady_state(trace: SimulationTrace, dt: float) -> None:
    """Anexa um aviso se a frequência ainda varia no fim do horizonte."""
    n = len(trace)
    window = max(2, int(math.ceil(STEADY_WINDOW * n)))
    omega = trace.omega_generators[-window:]
    if omega.shape[0] < 2:
        return
    slope = float(np.max(np.abs(np.diff(omega, axis=0)))) / dt
    if slope > STEADY_SLOPE_TOL:
        message = (f"steady state not reached: max |dω/dt| = {slope:.3e} rad/s² "
                   f"in the last {STEADY_WINDOW:.0%} of the horizon")
        trace.warnings.append(message)
        logger.warning("Regime permanente não atingido (%s): %s", trace.scenario_name, message)


# ============================================================================
# MÉTRICAS
# ============================================================================

def _refine_extremum(times: np.ndarray, series: np.ndarray, row: int) -> Tuple[float, float]:
    """
    Extremo da parábola pelas três amostras em torno de ``row``.

    Nas bordas, ou sem curvatura, devolve a própria amostra.
    """
    sample = float(series[row])
    if row == 0 or row == len(series) - 1:
        return sample, float(times[row])
    before, after = float(series[row - 1]), float(series[row + 1])
    curvature = before - 2.0 * sample + after
    if curvature == 0.0:
        return sample, float(times[row])
    shift = 0.5 * (before - after) / curvature
    value = sample - (after - before) ** 2 / (8.0 * curvature)
    step = float(times[row + 1] - times[row])
    return value, float(times[row]) + shift * step


def frequency_nadir(trace: SimulationTrace, omega0: Optional[float] = None) -> FrequencyMetrics:
    """
    Nadir de frequência dos geradores, mínimo do centro de inércia e regime.

    Para subfrequência usa o mínimo sobre tempo e geradores; para
    sobrefrequência, o máximo. O extremo amostrado é refinado por uma
    parábola nas amostras vizinhas. Se os dois ramos excedem a tolerância,
    vale o de maior desvio e um aviso é registrado.
    """
    if len(trace) == 0:
        raise ValueError("empty trace")
    omega0 = trace.omega0 if omega0 is None else omega0
    omega = trace.omega_generators
    coi = trace.coi_series
    deviation = omega - omega0
    under = float(-deviation.min())
    over = float(deviation.max())
    steady = float(omega[-1].mean())
    warnings: List[str] = []

    if max(under, over) < NADIR_ZERO_TOL:
        return FrequencyMetrics(omega0, 0.0, float(coi.min()), steady, 0.0, "none", ())

    if under > NADIR_MIXED_TOL and over > NADIR_MIXED_TOL:
        message = (f"mixed-sign frequency deviation (under {under:.3e}, over {over:.3e} rad/s); "
                   f"using the larger branch")
        warnings.append(message)
        logger.warning("Desvio com sinais opostos em %s: %s", trace.scenario_name or "trajetória", message)

    if under >= over:
        flat = int(np.argmin(omega))
        branch = "under"
        coi_extreme = float(coi.min())
    else:
        flat = int(np.argmax(omega))
        branch = "over"
        coi_extreme = float(coi.max())
    row, column = divmod(flat, omega.shape[1])
    nadir, time_of_nadir = _refine_extremum(trace.times, omega[:, column], row)
    return FrequencyMetrics(
        nadir_omega=nadir,
        nadir_cost=abs(omega0 - nadir),
        coi_min_omega=coi_extreme,
        steady_state_omega=steady,
        time_of_nadir=time_of_nadir,
        branch=branch,
        warnings=tuple(warnings),
    )


def predict_steady_state(grid: GridModel, placement: Optional[Distribution],
                         storage: Optional[StorageParams], p_trans: float) -> float:
    """
    Desvio de frequência em regime (rad/s) após uma perda constante ``p_trans`` (W).

    Δω_ss = −3·P_trans / (Σ 1/D_G + Σ 1/D_S)
    """
    inverse = float(grid.generator_inverse_dampings().sum())
    if placement is not None and storage is not None:
        inverse += placement.total_units * storage.inverse_damping
    if not inverse > 0:
        raise NumericalError("zero total damping: steady-state deviation is undefined")
    return -3.0 * p_trans / inverse


# ============================================================================
# BALANÇO DE ENERGIA
# ============================================================================

def effective_power(power: np.ndarray, charge_eff: float = 1.0,
                    discharge_eff: float = 1.0) -> np.ndarray:
    """Potência efetiva: η_c·P para P > 0 e P/η_d para P < 0."""
    return np.where(power > 0, charge_eff * power, power / discharge_eff)


def storage_energy_balance(trace: SimulationTrace, charge_eff: float = 1.0,
                           discharge_eff: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    """
    Compara a variação de energia de cada nó com a integral de P_S.

    Returns:
        (ΔE do estado, integral trapezoidal da potência efetiva), em J
    """
    energy = trace.energy_storage
    delta_e = energy[-1] - energy[0]
    dt = np.diff(trace.times)[:, None]
    right = effective_power(trace.storage_power[:-1], charge_eff, discharge_eff)
    left = effective_power(trace.storage_power_left[1:], charge_eff, discharge_eff)
    integral = (dt * (right + left) / 2).sum(axis=0)
    return delta_e, integral
