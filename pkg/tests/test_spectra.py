"""Testes de densidades espectrais, núcleos, deslocamentos e estados ligados."""

import math

import numpy as np
import pytest
from scipy import linalg, special

from core.errors import ScenarioValidationError, SurfacePlasmonPole
from core.spectra import (
    DiscreteModes,
    OhmicFamily,
    Plasmonic,
    bound_state_solve,
    discretize,
    drude_permittivity,
    evaluate_J,
    kernel_f,
    level_shift,
    spp_dispersion,
)


def ohmic_shift(eta: float, omega_c: float, energy: float) -> float:
    """Δ(E) fechado para s = 1: −ηω_c + ηE e^{−E/ω_c} Ei(E/ω_c)."""
    x = energy / omega_c
    return -eta * omega_c + eta * energy * math.exp(-x) * special.expi(x)


# =============================================================================
# J(ω)
# =============================================================================

def test_ohmic_evaluate_matches_formula() -> None:
    sd = OhmicFamily(eta=0.1, s=1.0, omega_c=1.0)
    assert evaluate_J(sd, 1.0) == pytest.approx(0.1 * math.exp(-1.0), rel=1e-14)
    assert evaluate_J(sd, 0.0) == 0.0


def test_ohmic_reference_normalization() -> None:
    sd = OhmicFamily(eta=0.2, s=3.0, omega_c=2.0, omega_ref=0.5)
    omega = 0.7
    expected = 0.2 * omega ** 3 * 0.5 ** -2 * math.exp(-omega / 2.0)
    assert evaluate_J(sd, omega) == pytest.approx(expected, rel=1e-13)


def test_evaluate_j_keeps_array_shape() -> None:
    sd = OhmicFamily(eta=0.1, s=1.0, omega_c=1.0)
    values = evaluate_J(sd, np.linspace(0.0, 3.0, 7))
    assert values.shape == (7,)


@pytest.mark.parametrize("kwargs", [
    {"eta": -0.1, "s": 1.0, "omega_c": 1.0},
    {"eta": 0.1, "s": 0.0, "omega_c": 1.0},
    {"eta": 0.1, "s": 1.0, "omega_c": -1.0},
    {"eta": float("nan"), "s": 1.0, "omega_c": 1.0},
])
def test_ohmic_rejects_invalid_parameters(kwargs) -> None:
    with pytest.raises(ScenarioValidationError):
        OhmicFamily(**kwargs)


def test_evaluate_j_rejects_negative_frequency() -> None:
    sd = OhmicFamily(eta=0.1, s=1.0, omega_c=1.0)
    with pytest.raises(ScenarioValidationError):
        evaluate_J(sd, -0.5)


def test_discrete_modes_shape_mismatch() -> None:
    with pytest.raises(ScenarioValidationError):
        DiscreteModes(couplings=np.array([0.1, 0.2]), frequencies=np.array([1.0]))


# =============================================================================
# f(Δt) E Δ(E)
# =============================================================================

def test_kernel_closed_form_matches_quadrature() -> None:
    sd = OhmicFamily(eta=0.1, s=1.0, omega_c=1.0)
    dt = np.array([0.0, 0.5, 2.0])
    closed = kernel_f(sd, dt, method="closed")
    numeric = kernel_f(sd, dt, method="quadrature")
    np.testing.assert_allclose(numeric, closed, rtol=1e-7, atol=1e-10)
    assert closed[0] == pytest.approx(0.1)


def test_kernel_is_hermitian_in_time() -> None:
    sd = OhmicFamily(eta=0.3, s=2.0, omega_c=1.5)
    assert kernel_f(sd, -0.7) == pytest.approx(np.conj(kernel_f(sd, 0.7)), rel=1e-14)


def test_discrete_kernel_is_mode_sum() -> None:
    modes = DiscreteModes.from_pairs([(0.3, 1.0), (0.4, 2.0)])
    expected = 0.09 * np.exp(-1j * 0.5) + 0.16 * np.exp(-2j * 0.5)
    assert kernel_f(modes, 0.5) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("energy", [-0.4, 0.0, 0.3, 2.5])
def test_level_shift_matches_closed_form(energy: float) -> None:
    sd = OhmicFamily(eta=0.1, s=1.0, omega_c=1.0)
    if energy == 0.0:
        expected = -0.1
    else:
        expected = ohmic_shift(0.1, 1.0, energy)
    assert level_shift(sd, energy) == pytest.approx(expected, rel=1e-7, abs=1e-10)


def test_level_shift_discrete_sum() -> None:
    modes = DiscreteModes.from_pairs([(0.5, 1.0), (0.2, 3.0)])
    assert level_shift(modes, 0.4) == pytest.approx(0.25 / -0.6 + 0.04 / -2.6, rel=1e-14)


# =============================================================================
# ESTADO LIGADO
# =============================================================================

def test_no_bound_state_below_threshold() -> None:
    sd = OhmicFamily(eta=0.09, s=1.0, omega_c=1.0)
    assert bound_state_solve(sd, 0.1) is None


def test_bound_state_satisfies_pole_condition() -> None:
    sd = OhmicFamily(eta=0.15, s=1.0, omega_c=1.0)
    bound = bound_state_solve(sd, 0.1)
    assert bound is not None
    assert bound.energy < 0.0
    assert 0.0 < bound.residue < 1.0
    assert bound.energy == pytest.approx(0.1 + ohmic_shift(0.15, 1.0, bound.energy), abs=1e-9)


def test_bound_state_threshold_on_eta_grid() -> None:
    sd_grid = np.linspace(0.02, 0.3, 29)
    present = [bound_state_solve(OhmicFamily(eta=eta, s=1.0, omega_c=1.0), 0.1) is not None
               for eta in sd_grid]
    first = sd_grid[present.index(True)]
    assert first == pytest.approx(0.1, abs=0.0101)
    assert all(present[present.index(True):])


def test_bound_state_discrete_matches_diagonalization() -> None:
    modes = DiscreteModes.from_pairs([(0.5, 1.0)])
    bound = bound_state_solve(modes, 0.1)
    energies, vectors = linalg.eigh(np.array([[0.1, 0.5], [0.5, 1.0]]))
    assert bound.energy == pytest.approx(energies[0], abs=1e-10)
    assert bound.residue == pytest.approx(abs(vectors[0, 0]) ** 2, abs=1e-10)


def test_bound_state_rejects_nonpositive_frequency() -> None:
    sd = OhmicFamily(eta=0.1, s=1.0, omega_c=1.0)
    with pytest.raises(ScenarioValidationError):
        bound_state_solve(sd, 0.0)


# =============================================================================
# PLASMÔNICA E DISCRETIZAÇÃO
# =============================================================================

def test_spp_pole_is_reported() -> None:
    sd = Plasmonic(dz=1.2, omega0=1.2, gamma0=1e-4, eps_d=25.0, gamma_p=0.0)
    with pytest.raises(SurfacePlasmonPole):
        spp_dispersion(sd, sd.resonance)


def test_drude_metal_below_plasma_frequency() -> None:
    sd = Plasmonic(dz=1.2, omega0=1.2, gamma0=1e-4, eps_d=25.0)
    eps = drude_permittivity(sd, 1.0)
    assert eps.real == pytest.approx(6.0 - 81.0 / 1.01)
    assert eps.imag > 0.0


def test_spp_dispersion_lossy_branch() -> None:
    sd = Plasmonic(dz=1.2, omega0=1.2, gamma0=1e-4, eps_d=25.0)
    k = spp_dispersion(sd, 1.0)
    assert k.imag >= 0.0
    assert k.real > 0.0


def test_plasmonic_j_is_truncated_above_band() -> None:
    sd = Plasmonic(dz=1.2, omega0=1.2, gamma0=1e-4, eps_d=25.0)
    assert evaluate_J(sd, 4.0) == 0.0
    value = evaluate_J(sd, 1.2)
    assert math.isfinite(value)
    assert value > 0.0


def test_discretize_preserves_total_coupling() -> None:
    sd = OhmicFamily(eta=0.1, s=1.0, omega_c=1.0)
    modes = discretize(sd, 4000, 40.0)
    assert modes.frequencies.size == 4000
    assert float(np.sum(modes.weights)) == pytest.approx(0.1, rel=1e-5)
