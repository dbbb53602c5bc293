"""Testes do solver de Volterra, taxas, caso térmico e propagação de estados."""

import math

import numpy as np
import pytest

from core.dynamics import (
    AmplitudeTrajectory,
    BellState,
    GHZState,
    OscillatorState,
    QubitState,
    asymptotic_rates,
    bose,
    decompose_u,
    discrete_bath_u,
    effective_temperature,
    ghz_state,
    markovian_u,
    propagate,
    rates_from_u,
    solve_thermal,
    solve_u,
    steady_state_distribution,
    thermal_kernel,
)
from core.errors import DimensionError, ScenarioValidationError, StepSizeError
from core.metrics import concurrence
from core.spectra import OhmicFamily, bound_state_solve, discretize, evaluate_J


@pytest.fixture
def free_bath() -> OhmicFamily:
    return OhmicFamily(eta=0.0, s=1.0, omega_c=1.0)


# =============================================================================
# SOLVER
# =============================================================================

def test_uncoupled_evolution_is_unitary(free_bath: OhmicFamily) -> None:
    traj = solve_u(free_bath, 1.0, 10.0, 0.01)
    np.testing.assert_allclose(np.abs(traj.u), 1.0, atol=1e-12)
    np.testing.assert_allclose(traj.u, np.exp(-1j * traj.t), atol=1e-3)
    assert traj.t[0] == 0.0 and traj.u[0] == 1.0


def test_uncoupled_rates_vanish(free_bath: OhmicFamily) -> None:
    rates = rates_from_u(solve_u(free_bath, 0.5, 5.0, 0.01))
    np.testing.assert_allclose(rates.gamma, 0.0, atol=1e-12)
    np.testing.assert_allclose(rates.omega, 0.5, atol=1e-12)
    assert rates.defined.all()


def test_coarse_step_is_rejected() -> None:
    sd = OhmicFamily(eta=0.1, s=1.0, omega_c=1.0)
    with pytest.raises(StepSizeError):
        solve_u(sd, 1.0, 10.0, 0.5)


def test_invalid_grid_is_rejected(free_bath: OhmicFamily) -> None:
    with pytest.raises(ScenarioValidationError):
        solve_u(free_bath, 1.0, -1.0, 0.01)


def test_weak_coupling_follows_markovian_decay() -> None:
    sd = OhmicFamily(eta=0.002, s=1.0, omega_c=10.0)
    traj = solve_u(sd, 1.0, 20.0, 0.01)
    reference = markovian_u(sd, 1.0, traj.t)
    assert np.max(np.abs(traj.u - reference)) < 0.02
    tail = asymptotic_rates(rates_from_u(traj))
    assert tail.Gamma == pytest.approx(math.pi * evaluate_J(sd, 1.0), rel=0.05)


def test_rates_undefined_where_amplitude_vanishes() -> None:
    t = np.linspace(0.0, 1.0, 5)
    u = np.array([1.0, 0.5, 0.0, 0.5, 1.0], dtype=complex)
    traj = AmplitudeTrajectory(t=t, u=u, udot=np.ones(5, dtype=complex), omega0=1.0)
    rates = rates_from_u(traj)
    assert not rates.defined[2]
    assert math.isnan(rates.gamma[2])


@pytest.mark.slow
def test_volterra_matches_discrete_bath_oracle() -> None:
    sd = OhmicFamily(eta=0.05, s=1.0, omega_c=5.0)
    traj = solve_u(sd, 1.0, 50.0, 0.005)
    modes = discretize(sd, 2000, 100.0)
    oracle = discrete_bath_u(modes, 1.0, traj.t[::20])
    assert np.max(np.abs(traj.u[::20] - oracle)) < 1e-3


@pytest.mark.slow
def test_bound_state_suppresses_dissipation() -> None:
    with_bound = OhmicFamily(eta=0.2, s=1.0, omega_c=1.0)
    bound = bound_state_solve(with_bound, 0.1)
    traj = solve_u(with_bound, 0.1, 5000.0, 0.2)
    assert abs(abs(traj.u[-1]) - bound.residue) < 0.05

    without = OhmicFamily(eta=0.05, s=1.0, omega_c=1.0)
    assert bound_state_solve(without, 0.1) is None
    assert abs(solve_u(without, 0.1, 5000.0, 0.2).u[-1]) < 0.02


@pytest.mark.slow
def test_spectral_decomposition_matches_solver() -> None:
    sd = OhmicFamily(eta=0.2, s=1.0, omega_c=1.0)
    bound = bound_state_solve(sd, 0.1)
    assert abs(decompose_u(sd, 0.1, bound, 0.0) - 1.0) < 1e-3
    traj = solve_u(sd, 0.1, 30.0, 0.02)
    assert abs(decompose_u(sd, 0.1, bound, 30.0) - traj.u[-1]) < 5e-3


# =============================================================================
# TEMPERATURA FINITA
# =============================================================================

def test_bose_limits() -> None:
    assert bose(1.0, math.inf) == 0.0
    assert bose(1.0, 1.0) == pytest.approx(1.0 / (math.e - 1.0))


def test_zero_temperature_has_no_thermal_population() -> None:
    sd = OhmicFamily(eta=0.05, s=1.0, omega_c=2.0)
    traj = solve_u(sd, 1.0, 5.0, 0.01)
    thermal, rates = solve_thermal(sd, 1.0, math.inf, traj)
    np.testing.assert_array_equal(thermal.v, 0.0)
    np.testing.assert_allclose(rates.gamma_beta, 0.0, atol=1e-15)


def test_solve_thermal_rejects_nonpositive_beta() -> None:
    sd = OhmicFamily(eta=0.05, s=1.0, omega_c=2.0)
    traj = solve_u(sd, 1.0, 1.0, 0.01)
    with pytest.raises(ScenarioValidationError):
        solve_thermal(sd, 1.0, 0.0, traj)


def test_ohmic_thermal_kernel_matches_mode_sum() -> None:
    sd = OhmicFamily(eta=0.1, s=1.0, omega_c=1.0)
    dt = np.array([0.0, 0.5, 2.0])
    series = thermal_kernel(sd, 1.0, dt)
    modes = thermal_kernel(discretize(sd, 4000, 40.0), 1.0, dt)
    np.testing.assert_allclose(series, modes, rtol=1e-3)


def test_effective_temperature_inverts_bose_ratio() -> None:
    temperature, omega, gamma = 2.0, 1.0, 0.3
    gamma_beta = 2.0 * gamma / math.expm1(omega / temperature)
    result = effective_temperature(gamma, gamma_beta, omega, rate_scale=1.0)
    assert result.status == "finite"
    assert result.value == pytest.approx(temperature, rel=1e-12)


def test_effective_temperature_flags() -> None:
    assert effective_temperature(1e-6, 1e-6, 1.0, rate_scale=1.0).status == "divergent"
    undefined = effective_temperature(-0.2, 0.1, 1.0, rate_scale=1.0)
    assert undefined.status == "undefined"
    assert math.isnan(undefined.value)


def test_steady_state_distribution_is_geometric() -> None:
    p = steady_state_distribution(0.5, 2.0, 400)
    x = 2.0 / (2.0 * 0.5)
    assert p.sum() == pytest.approx(1.0, abs=1e-12)
    assert p[1] / p[0] == pytest.approx(x / (1.0 + x))
    assert float(np.dot(np.arange(p.size), p)) == pytest.approx(x, rel=1e-9)


@pytest.mark.slow
def test_markovian_regime_thermalizes_to_bath_temperature() -> None:
    sd = OhmicFamily(eta=0.01, s=1.0, omega_c=5.0)
    beta = 0.1
    traj = solve_u(sd, 1.0, 150.0, 0.02)
    thermal, rates = solve_thermal(sd, 1.0, beta, traj)
    tail = asymptotic_rates(rates)
    result = effective_temperature(tail.Gamma, tail.Gamma_beta, tail.Omega,
                                   math.pi * evaluate_J(sd, 1.0))
    assert result.status == "finite"
    assert result.value == pytest.approx(1.0 / beta, rel=0.02)

    finals = [propagate(thermal, rates, OscillatorState(n0)).observables["mean_photon_number"][-1]
              for n0 in (0.0, 5.0)]
    assert abs(finals[1] - finals[0]) / np.mean(finals) < 0.01


@pytest.mark.slow
def test_bound_state_freezes_rates_and_temperature_diverges() -> None:
    sd = OhmicFamily(eta=0.1, s=1.0, omega_c=20.0)
    assert bound_state_solve(sd, 1.0) is not None
    traj = solve_u(sd, 1.0, 250.0, 0.01)
    thermal, rates = solve_thermal(sd, 1.0, 1.0, traj)
    tail = asymptotic_rates(rates)
    scale = math.pi * evaluate_J(sd, 1.0)
    assert abs(tail.Gamma) < 1e-3 * scale
    assert effective_temperature(tail.Gamma, tail.Gamma_beta, tail.Omega, scale).status == "divergent"

    finals = [propagate(thermal, rates, OscillatorState(n0)).observables["mean_photon_number"][-1]
              for n0 in (0.0, 5.0)]
    assert abs(finals[1] - finals[0]) / np.mean(finals) > 0.1


# =============================================================================
# ESTADOS
# =============================================================================

@pytest.fixture
def decaying_traj():
    sd = OhmicFamily(eta=0.05, s=1.0, omega_c=2.0)
    return solve_u(sd, 1.0, 5.0, 0.01)


def test_qubit_excited_population(decaying_traj) -> None:
    series = propagate(decaying_traj, None, QubitState(np.array([[1.0, 0.0], [0.0, 0.0]])))
    np.testing.assert_allclose(series.observables["excited_population"],
                               decaying_traj.population, atol=1e-15)
    traces = np.trace(series.rho, axis1=1, axis2=2)
    np.testing.assert_allclose(traces, 1.0, atol=1e-12)


def test_bell_concurrence_is_fourth_power(decaying_traj) -> None:
    series = propagate(decaying_traj, None, BellState())
    for i in (0, 100, 400):
        assert concurrence(series.rho[i]) == pytest.approx(abs(decaying_traj.u[i]) ** 4, abs=1e-8)
    np.testing.assert_allclose(series.observables["concurrence_closed"],
                               decaying_traj.population ** 2)


def test_ghz_state_structure() -> None:
    u = 0.8 * np.exp(0.3j)
    rho = ghz_state(u, 3)
    assert rho.shape == (8, 8)
    assert np.trace(rho).real == pytest.approx(1.0)
    assert rho[0, 7] == pytest.approx(0.5 * u ** 3)
    traj = AmplitudeTrajectory(t=np.array([0.0]), u=np.array([u]),
                               udot=np.zeros(1, dtype=complex), omega0=1.0)
    series = propagate(traj, None, GHZState(3))
    assert series.observables["coherence"][0] == pytest.approx(abs(u) ** 3)


def test_ghz_rejects_too_many_qubits() -> None:
    with pytest.raises(DimensionError):
        ghz_state(1.0, 11)


def test_oscillator_rejects_negative_population(decaying_traj) -> None:
    with pytest.raises(ScenarioValidationError):
        propagate(decaying_traj, None, OscillatorState(-1.0))
