"""Testes dos modelos de duas bandas acionados e seus invariantes."""

import math

import numpy as np
import pytest
from scipy import linalg

from core.errors import ScenarioValidationError
from core.topology import (
    SIGMA,
    DrivenTwoBandModel,
    HaldaneParams,
    KitaevParams,
    ModelKind,
    NHSSHParams,
    bloch_quasienergies,
    chern_number,
    classify_closing,
    find_gap_closings,
    gap_closing_locus,
    gbz_map,
    haldane_ribbon_edge_flow,
    kitaev_invariants,
    kitaev_model,
    nhssh_invariants,
    nhssh_static_winding,
    open_spectrum,
    two_band_floquet,
)

# T₁ da ressonância colinear em Γ com T₂ = 1.2: 5.25T₁ + 0.75T₂ = π
COLLINEAR_T1 = (math.pi - 0.9) / 5.25


def haldane(T1: float, T2: float = 1.2) -> DrivenTwoBandModel:
    return DrivenTwoBandModel(ModelKind.HALDANE, HaldaneParams(), T1, T2)


def pauli(h: np.ndarray) -> np.ndarray:
    return np.einsum("i,ijk->jk", h, SIGMA)


# =============================================================================
# DECOMPOSIÇÃO DE DUAS BANDAS
# =============================================================================

def test_two_band_form_matches_matrix_product() -> None:
    rng = np.random.default_rng(7)
    for _ in range(5):
        h1, h2 = rng.normal(size=3), rng.normal(size=3)
        T1, T2 = rng.uniform(0.1, 2.0, size=2)
        floquet = two_band_floquet(h1, h2, T1, T2)
        assert floquet.epsilon ** 2 + np.dot(floquet.r, floquet.r) == pytest.approx(1.0, abs=1e-12)
        expected = linalg.expm(-1j * pauli(h2) * T2) @ linalg.expm(-1j * pauli(h1) * T1)
        closed = floquet.epsilon * np.eye(2) + 1j * pauli(floquet.r)
        np.testing.assert_allclose(closed, expected, atol=1e-12)


def test_single_piece_recovers_bloch_vector() -> None:
    h1 = np.array([0.3, -0.2, 0.5])
    floquet = two_band_floquet(h1, np.array([1.0, 0.0, 0.0]), 1.0, 0.0)
    np.testing.assert_allclose(floquet.h_eff, h1, atol=1e-12)


def test_durations_are_validated() -> None:
    with pytest.raises(ScenarioValidationError):
        DrivenTwoBandModel(ModelKind.HALDANE, HaldaneParams(), 0.0, 1.0)


def test_bloch_quasienergies_are_symmetric() -> None:
    energies = bloch_quasienergies(kitaev_model(KitaevParams(), 0.33), n_k=64)
    assert energies.shape == (64, 2)
    np.testing.assert_allclose(energies[:, 0], -energies[:, 1])


# =============================================================================
# HALDANE
# =============================================================================

def test_gamma_point_closing_is_collinear() -> None:
    model = haldane(COLLINEAR_T1)
    assert classify_closing(model, np.array([0.0, 0.0])) == ("collinear", 1)

    closings = gap_closing_locus(model, n_k=60)
    at_gamma = [c for c in closings
                if all(min(x, 2.0 * math.pi - x) < 1e-4 for x in c.k)]
    assert at_gamma
    assert all(c.condition == "collinear" and c.quasienergy == "pi" for c in at_gamma)


def test_find_gap_closings_over_duration_grid() -> None:
    found = find_gap_closings(haldane(COLLINEAR_T1), [COLLINEAR_T1], [1.2], n_k=60)
    assert any(c.condition == "collinear" for _, _, c in found)
    assert all(T2 == 1.2 for _, T2, _ in found)


@pytest.mark.parametrize("n_grid", [30, 60])
@pytest.mark.parametrize("T1, expected", [(0.9, -4), (1.3, -7)])
def test_chern_numbers(T1: float, expected: int, n_grid: int) -> None:
    assert chern_number(haldane(T1), n_grid) == expected


def test_chern_requires_two_dimensional_model() -> None:
    with pytest.raises(ScenarioValidationError):
        chern_number(kitaev_model(KitaevParams(), 0.33))


@pytest.mark.slow
def test_ribbon_edge_flow_matches_chern_number() -> None:
    model = haldane(0.9)
    flow = haldane_ribbon_edge_flow(model, n_cells=40, n_kappa=240)
    assert abs(flow.chern_difference) == abs(chern_number(model, 60))


# =============================================================================
# KITAEV
# =============================================================================

# (T, pares em 0, pares em π/T): uma troca em k* com cos k* = Δ₁/(2Δ₂) abre dois pares,
# a troca em k = π fecha um
KITAEV_PHASES = [
    (0.15, 0, 0), (0.2, 0, 0),
    (0.27, 0, 2), (0.3, 0, 2), (0.33, 0, 2),
    (0.38, 0, 1), (0.42, 0, 1),
]


@pytest.mark.parametrize("T, n_zero, n_pi", KITAEV_PHASES)
def test_kitaev_bulk_boundary_correspondence(T: float, n_zero: int, n_pi: int) -> None:
    model = kitaev_model(KitaevParams(), T)
    invariants = kitaev_invariants(model)
    spectrum = open_spectrum(model, 100)
    assert (invariants.n_zero, invariants.n_pi) == (n_zero, n_pi)
    assert (spectrum.n_zero, spectrum.n_pi) == (n_zero, n_pi)
    assert float(invariants.W1).is_integer() and float(invariants.W2).is_integer()


def test_chiral_axis_exchanges_pieces() -> None:
    params = KitaevParams()
    k = np.linspace(0.1, 3.0, 7)
    gamma = pauli(params.chiral_axis())
    for h1, h2 in zip(params.bloch(k, 0), params.bloch(k, 1)):
        np.testing.assert_allclose(gamma @ pauli(h1) @ gamma, -pauli(h2), atol=1e-12)


# =============================================================================
# SSH NÃO-HERMITIANO
# =============================================================================

def test_gbz_radius() -> None:
    beta = gbz_map(0.0, 2.0, 1.0)
    assert abs(beta) == pytest.approx(math.sqrt(3.0 / 5.0))
    with pytest.raises(ScenarioValidationError):
        gbz_map(0.0, 0.5, 1.0)


def test_static_winding_boundary() -> None:
    t1_values = np.linspace(0.6, 1.6, 51)
    windings = [nhssh_static_winding(NHSSHParams(t1=t1, gamma=1.0, f=1.0)) for t1 in t1_values]
    topological = [t1 for t1, w in zip(t1_values, windings) if round(w) == 1]
    assert max(topological) == pytest.approx(math.sqrt(1.0 + 0.25), abs=0.02)
    assert set(round(w) for w in windings) == {0, 1}


def test_conventional_zone_gives_fractional_winding() -> None:
    params = NHSSHParams(t1=1.0, gamma=1.0, f=1.0)
    assert nhssh_static_winding(params, generalized=False) == pytest.approx(0.5)
    assert nhssh_static_winding(params) == pytest.approx(1.0)


@pytest.mark.parametrize("f", [0.5, 1.5, 2.5])
def test_nhssh_invariants_count_open_chain_modes(f: float) -> None:
    params = NHSSHParams(t1=2.0, gamma=1.0, f=f, q=3.0)
    model = DrivenTwoBandModel(ModelKind.NHSSH, params, 0.6, 0.6)
    invariants = nhssh_invariants(model)
    spectrum = open_spectrum(model, 80)
    assert (spectrum.n_zero, spectrum.n_pi) == (invariants.n_zero, invariants.n_pi)
