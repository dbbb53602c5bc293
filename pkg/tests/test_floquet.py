"""Testes de propagadores de Floquet, quasienergias, FBS e evolução."""

import math

import numpy as np
import pytest

from core.errors import DimensionError, NonUnitaryError, ScenarioValidationError
from core.floquet import (
    PiecewiseModel,
    analyze,
    asymptotic_projection,
    build_battery,
    build_spinchain,
    detect_fbs,
    fold_quasienergy,
    one_period_propagator,
    quasienergy_spectrum,
    stroboscopic_evolve,
)


def spinchain(a2: float, L: int = 800) -> PiecewiseModel:
    """Cadeia em unidades de J = 1: T = 0.05π, τ = 0.02π, λ = 20."""
    return build_spinchain(L, 20.0, 1.0, 1.0, 0.0, a2, 0.02 * math.pi, 0.05 * math.pi)


def tail_mean(values: np.ndarray, fraction: float = 0.2) -> float:
    return float(np.mean(values[-int(fraction * values.size):]))


# =============================================================================
# PROPAGADOR E QUASIENERGIAS
# =============================================================================

def test_fold_quasienergy_window() -> None:
    period = 2.0
    half = math.pi / period
    assert fold_quasienergy(half, period) == pytest.approx(half)
    assert fold_quasienergy(-half, period) == pytest.approx(half)
    assert fold_quasienergy(3 * half, period) == pytest.approx(half)
    assert fold_quasienergy(0.5 + 2 * math.pi / period, period) == pytest.approx(0.5)
    folded = fold_quasienergy(np.linspace(-10.0, 10.0, 101), period)
    assert np.all((folded > -half) & (folded <= half + 1e-12))


def test_propagator_is_unitary() -> None:
    model = spinchain(12.0, L=20)
    propagator = one_period_propagator(model)
    np.testing.assert_allclose(propagator.conj().T @ propagator, np.eye(model.dim), atol=1e-10)


def test_static_piece_gives_folded_energies() -> None:
    hamiltonian = np.diag([1.0, 2.0, 4.0])
    model = PiecewiseModel(name="static", pieces=((hamiltonian, 1.0),), system_indices=(0,),
                           observable_index=0, initial_index=0)
    spectrum = quasienergy_spectrum(one_period_propagator(model), 1.0)
    expected = np.sort(fold_quasienergy([1.0, 2.0, 4.0], 1.0))
    np.testing.assert_allclose(np.sort(spectrum.quasienergies), expected, atol=1e-12)


def test_non_unitary_propagator_is_rejected() -> None:
    with pytest.raises(NonUnitaryError):
        quasienergy_spectrum(1.1 * np.eye(3), 1.0)


def test_piecewise_model_validation() -> None:
    with pytest.raises(ScenarioValidationError):
        PiecewiseModel(name="bad", pieces=((np.array([[0.0, 1.0], [0.0, 0.0]]), 1.0),),
                       system_indices=(0,), observable_index=0, initial_index=0)
    with pytest.raises(ScenarioValidationError):
        build_spinchain(10, 20.0, 1.0, 1.0, 0.0, 1.0, 0.2, 0.1)


# =============================================================================
# CADEIA DE SPINS
# =============================================================================

def test_strong_drive_binds_the_system_spin() -> None:
    model = spinchain(36.0)
    spectrum = analyze(model)
    assert spectrum.n_fbs == 1
    series = stroboscopic_evolve(model, None, 1000, spectrum=spectrum)
    projection = asymptotic_projection(spectrum, model, n_periods=8, samples_per_period=1)
    assert tail_mean(series.observable) == pytest.approx(projection.mean_value, rel=0.1)
    assert series.norm_error < 1e-10


def test_weak_drive_leaves_no_bound_state() -> None:
    model = spinchain(1.5)
    spectrum = analyze(model)
    assert spectrum.n_fbs == 0
    series = stroboscopic_evolve(model, None, 1000, spectrum=spectrum)
    assert tail_mean(series.observable) < 0.01

    projection = asymptotic_projection(spectrum, model)
    assert projection.n_fbs == 0
    assert projection.mean_value == 0.0

    superposition = np.zeros(model.dim, dtype=complex)
    superposition[0] = 1.0 / math.sqrt(2.0)
    coherent = stroboscopic_evolve(model, superposition, 1000,
                                   vacuum_amplitude=1.0 / math.sqrt(2.0), spectrum=spectrum)
    assert tail_mean(coherent.fidelity) == pytest.approx(0.5, abs=0.02)


@pytest.mark.slow
@pytest.mark.parametrize("a2, n_fbs", [(1.5, 0), (36.0, 1)])
def test_fbs_count_is_stable_when_chain_doubles(a2: float, n_fbs: int) -> None:
    counts = [analyze(spinchain(a2, L)).n_fbs for L in (800, 1600)]
    assert counts == [n_fbs, n_fbs]


def test_unnormalized_initial_state_is_rejected() -> None:
    model = spinchain(12.0, L=10)
    psi0 = np.zeros(model.dim, dtype=complex)
    psi0[0] = 1.0
    with pytest.raises(ScenarioValidationError):
        stroboscopic_evolve(model, psi0, 10, vacuum_amplitude=0.5)


# =============================================================================
# BATERIA
# =============================================================================

def test_battery_sector_layout() -> None:
    model = build_battery(3, 2.0, 2.0, 1.0, 0.6, 0.5, 1.0, 0.5, 0.5, 0.5)
    assert model.dim == 2 + 2 * 9
    charging, storage = model.pieces[0][0], model.pieces[1][0]
    assert charging[0, 1] == 1.0 and storage[0, 1] == 0.0
    np.testing.assert_allclose(storage[0, 2:11], 0.2)
    np.testing.assert_allclose(storage[1, 11:], 0.2)
    assert storage[0, 11:].sum() == 0.0
    assert model.period == pytest.approx(1.5)


def test_isolated_battery_follows_rabi_transfer() -> None:
    kappa = 1.0
    tau = math.pi / (2.0 * kappa)
    model = build_battery(2, 2.0, 2.0, kappa, 0.0, 0.5, 1.0, tau, tau, tau)
    series = stroboscopic_evolve(model, None, 2, samples_per_period=3)
    np.testing.assert_allclose(series.observable, [0.0, 2.0, 2.0, 0.0, 2.0, 2.0], atol=1e-10)


def test_battery_rejects_oversized_sector() -> None:
    with pytest.raises(DimensionError):
        build_battery(60, 2.0, 2.0, 1.0, 0.5, 0.5, 1.0, 1.0, 1.0, 1.0)


def test_battery_rejects_nonpositive_durations() -> None:
    with pytest.raises(ScenarioValidationError):
        build_battery(2, 2.0, 2.0, 1.0, 0.5, 0.5, 1.0, 1.0, 0.0, 1.0)


@pytest.mark.slow
def test_battery_beat_matches_quasienergy_splitting() -> None:
    for kappa in (0.1, 0.5, 2.0, 4.0):
        tau = math.pi / (2.0 * kappa)
        model = build_battery(30, 2.0, 2.0, kappa, 0.5, 0.5, 1.0, tau, tau, tau)
        spectrum = analyze(model)
        projection = asymptotic_projection(spectrum, model, n_periods=8)
        if projection.n_fbs == 2:
            assert 0.0 < projection.beat_frequency <= math.pi / model.period
        elif projection.n_fbs == 0:
            assert projection.beat_frequency is None


def test_detect_fbs_respects_weight_threshold() -> None:
    model = spinchain(36.0, L=100)
    spectrum = quasienergy_spectrum(one_period_propagator(model), model.period)
    assert detect_fbs(spectrum, model, weight_threshold=1.1) == []
    assert set(spectrum.classification) == {"band"}
    assert spectrum.band_edges is not None
