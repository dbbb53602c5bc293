"""
PyBound - Módulo Floquet
Propagadores de um período para modelos com acionamento constante por
partes, espectro de quasienergias, detecção de estados ligados de Floquet
(FBS) e evolução estroboscópica da cadeia de spins e da bateria quântica.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from .errors import DimensionError, NonUnitaryError, ScenarioValidationError
from .metrics import fidelity

logger = logging.getLogger(__name__)

DEFAULT_MAX_DIM = 6000
FBS_WEIGHT_THRESHOLD = 0.1
FBS_GAP_FACTOR = 5.0
UNITARITY_TOL = 1e-8


# =============================================================================
# DATA CLASSES
# =============================================================================

@dataclass(frozen=True, eq=False)
class PiecewiseModel:
    """
    Hamiltoniano constante por partes no setor de uma excitação.

    pieces: sequência (H_j, T_j) na ordem temporal do período.
    system_indices: sítios do sistema usados no peso de localização.
    observable_index: sítio cuja população é o observável (P_t ou ℰ/ω_b).
    """
    name: str
    pieces: Tuple[Tuple[np.ndarray, float], ...]
    system_indices: Tuple[int, ...]
    observable_index: int
    initial_index: int
    observable_scale: float = 1.0
    parameters: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        is_valid, errors = self.validate_all()
        if not is_valid:
            raise ScenarioValidationError("\n".join(errors), key=self.name)

    def validate_all(self) -> Tuple[bool, List[str]]:
        errors = []
        if not self.pieces:
            errors.append("Modelo sem peças.")
            return False, errors
        dim = self.pieces[0][0].shape[0]
        for j, (hamiltonian, duration) in enumerate(self.pieces):
            if hamiltonian.shape != (dim, dim):
                errors.append(f"Peça {j}: dimensão {hamiltonian.shape} ≠ ({dim}, {dim}).")
            elif np.max(np.abs(hamiltonian - hamiltonian.conj().T)) > 1e-12 * max(1.0, np.max(np.abs(hamiltonian))):
                errors.append(f"Peça {j}: Hamiltoniano não hermitiano.")
            if not (math.isfinite(duration) and duration > 0):
                errors.append(f"Peça {j}: duração deve ser positiva ({duration!r}).")
        for index in (*self.system_indices, self.observable_index, self.initial_index):
            if not 0 <= index < dim:
                errors.append(f"Índice {index} fora do setor de dimensão {dim}.")
        return len(errors) == 0, errors

    @property
    def dim(self) -> int:
        return self.pieces[0][0].shape[0]

    @property
    def period(self) -> float:
        return float(sum(duration for _, duration in self.pieces))

    @property
    def boundaries(self) -> np.ndarray:
        """Instantes de início de cada peça e o fim do período."""
        return np.concatenate([[0.0], np.cumsum([d for _, d in self.pieces])])


@dataclass
class FloquetSpectrum:
    """Quasienergias em (−π/T, π/T], modos de Floquet e classificação."""
    period: float
    quasienergies: np.ndarray
    modes: np.ndarray
    eigenvalues: np.ndarray
    classification: List[str] = field(default_factory=list)
    band_edges: Optional[Tuple[float, float]] = None

    @property
    def fbs_indices(self) -> List[int]:
        return [i for i, c in enumerate(self.classification) if c == "fbs"]

    @property
    def n_fbs(self) -> int:
        return len(self.fbs_indices)


@dataclass
class StroboscopicSeries:
    """Série temporal do observável (P_t ou ℰ_t) e fidelidade opcional."""
    t: np.ndarray
    observable: np.ndarray
    fidelity: Optional[np.ndarray] = None
    norm_error: float = 0.0

    def columns(self) -> Dict[str, np.ndarray]:
        cols = {"t": self.t, "observable": self.observable}
        if self.fidelity is not None:
            cols["fidelity"] = self.fidelity
        return cols


@dataclass
class AsymptoticProjection:
    """Reconstrução do observável só com as componentes FBS."""
    n_fbs: int
    mean_value: float
    beat_frequency: Optional[float]
    t: np.ndarray
    reconstruction: np.ndarray


# =============================================================================
# CONSTRUTORES DE MODELOS
# =============================================================================

def build_spinchain(L: int, lam: float, J: float, g: float, a1: float, a2: float,
                    tau: float, T: float) -> PiecewiseModel:
    """
    Spin do sistema acoplado a uma cadeia XX de L spins.

    Setor de uma excitação: sítio 0 = sistema (λ + A), sítios 1..L = cadeia
    (λ), saltos g (sistema-cadeia) e J (cadeia). O vácuo tem energia zero.
    """
    if L < 2:
        raise ScenarioValidationError("L deve ser ≥ 2.", key="L")
    if not (0 < tau < T):
        raise ScenarioValidationError("Exige-se 0 < τ < T.", key="tau")
    dim = L + 1
    base = np.zeros((dim, dim))
    idx = np.arange(1, L)
    base[idx, idx + 1] = base[idx + 1, idx] = J
    base[0, 1] = base[1, 0] = g
    base[np.arange(1, dim), np.arange(1, dim)] = lam

    def piece(amplitude: float) -> np.ndarray:
        hamiltonian = base.copy()
        hamiltonian[0, 0] = lam + amplitude
        return hamiltonian

    logger.debug("[FLOQUET] cadeia de spins L=%d, a1=%g, a2=%g", L, a1, a2)
    return PiecewiseModel(
        name="spinchain",
        pieces=((piece(a1), tau), (piece(a2), T - tau)),
        system_indices=(0,),
        observable_index=0,
        initial_index=0,
        parameters={"L": L, "lambda": lam, "J": J, "g": g, "a1": a1, "a2": a2, "tau": tau, "T": T},
    )


def lattice_dispersion(n_lattice: int, varpi: float, q: float) -> np.ndarray:
    """ω_k = ϖ − 2q(cos k_x + cos k_y), k = 2πm/N com contorno periódico."""
    k = 2.0 * np.pi * np.arange(n_lattice) / n_lattice
    kx, ky = np.meshgrid(k, k, indexing="ij")
    return (varpi - 2.0 * q * (np.cos(kx) + np.cos(ky))).ravel()


def build_battery(n_lattice: int, omega_b: float, omega_c: float, kappa: float, g: float,
                  q: float, varpi: float, tau_c: float, tau_s: float, tau_d: float,
                  max_dim: int = DEFAULT_MAX_DIM) -> PiecewiseModel:
    """
    Bateria (b) e carregador (c) com reservatórios em rede quadrada N×N.

    Base: [b, c, N² modos de b, N² modos de c]. Acoplamento g/N a cada modo,
    sempre ligado; apenas κf(t) é chaveado (f = 1, 0, 1).
    """
    if n_lattice < 1:
        raise ScenarioValidationError("N da rede deve ser ≥ 1.", key="N")
    dim = 2 + 2 * n_lattice ** 2
    if dim > max_dim:
        raise DimensionError(f"[FLOQUET] setor de dimensão {dim} excede o limite {max_dim}.")
    for name, value in (("tau_c", tau_c), ("tau_s", tau_s), ("tau_d", tau_d)):
        if not (math.isfinite(value) and value > 0):
            raise ScenarioValidationError(f"{name} deve ser positivo.", key=name)

    modes = n_lattice ** 2
    dispersion = lattice_dispersion(n_lattice, varpi, q)
    coupling = g / n_lattice
    base = np.zeros((dim, dim))
    base[0, 0] = omega_b
    base[1, 1] = omega_c
    env_b = np.arange(2, 2 + modes)
    env_c = np.arange(2 + modes, dim)
    base[env_b, env_b] = dispersion
    base[env_c, env_c] = dispersion
    base[0, env_b] = base[env_b, 0] = coupling
    base[1, env_c] = base[env_c, 1] = coupling

    charging = base.copy()
    charging[0, 1] = charging[1, 0] = kappa
    return PiecewiseModel(
        name="battery",
        pieces=((charging, tau_c), (base, tau_s), (charging.copy(), tau_d)),
        system_indices=(0, 1),
        observable_index=0,
        initial_index=1,
        observable_scale=omega_b,
        parameters={"N": n_lattice, "omega_b": omega_b, "omega_c": omega_c, "kappa": kappa,
                    "g": g, "q": q, "varpi": varpi},
    )


# =============================================================================
# PROPAGADORES E ESPECTRO
# =============================================================================

def _piece_eigensystems(model: PiecewiseModel) -> List[Tuple[np.ndarray, np.ndarray]]:
    return [linalg.eigh(hamiltonian) for hamiltonian, _ in model.pieces]


def _evolve_piece(eigensystem: Tuple[np.ndarray, np.ndarray], dt: float) -> np.ndarray:
    energies, vectors = eigensystem
    return (vectors * np.exp(-1j * energies * dt)) @ vectors.conj().T


def one_period_propagator(model: PiecewiseModel) -> np.ndarray:
    """U_T = U_n ⋯ U_1, U_j = exp(−iH_jT_j) por autodecomposição."""
    propagator = np.eye(model.dim, dtype=complex)
    for eigensystem, (_, duration) in zip(_piece_eigensystems(model), model.pieces):
        propagator = _evolve_piece(eigensystem, duration) @ propagator
    return propagator


def fold_quasienergy(epsilon, period: float):
    """Dobra ε em (−π/T, π/T]; empates na borda vão para +π/T."""
    omega = 2.0 * np.pi / period
    half = np.pi / period
    return half - np.mod(half - np.asarray(epsilon, dtype=float), omega)


def quasienergy_spectrum(propagator: np.ndarray, period: float,
                         check_unitary: bool = True) -> FloquetSpectrum:
    """
    ε_α = i ln(λ_α)/T com λ_α autovalores de U_T.

    A forma de Schur complexa de uma matriz normal é diagonal e fornece modos
    ortonormais.
    """
    propagator = np.asarray(propagator, dtype=complex)
    dim = propagator.shape[0]
    if check_unitary:
        deviation = np.max(np.abs(propagator.conj().T @ propagator - np.eye(dim)))
        if deviation > UNITARITY_TOL:
            raise NonUnitaryError(f"[FLOQUET] ‖U†U − I‖ = {deviation:.3e}")
    triangular, modes = linalg.schur(propagator, output="complex")
    eigenvalues = np.diag(triangular).copy()
    quasienergies = fold_quasienergy(-np.angle(eigenvalues) / period, period)
    return FloquetSpectrum(period=period, quasienergies=quasienergies, modes=modes,
                           eigenvalues=eigenvalues, classification=["band"] * dim)


def _circular_distance(a, b, period: float):
    omega = 2.0 * np.pi / period
    d = np.mod(np.abs(np.asarray(a) - np.asarray(b)), omega)
    return np.minimum(d, omega - d)


def _band_edges(band: np.ndarray, period: float) -> Optional[Tuple[float, float]]:
    if band.size == 0:
        return None
    values = np.sort(band)
    omega = 2.0 * np.pi / period
    gaps = np.diff(np.concatenate([values, [values[0] + omega]]))
    widest = int(np.argmax(gaps))
    upper = values[widest]
    lower = values[(widest + 1) % values.size]
    return float(lower), float(upper)


def detect_fbs(spectrum: FloquetSpectrum, model: PiecewiseModel,
               weight_threshold: float = FBS_WEIGHT_THRESHOLD,
               gap_factor: float = FBS_GAP_FACTOR) -> List[int]:
    """
    Classifica estados como FBS.

    Critérios: peso nos sítios do sistema acima de weight_threshold e
    distância circular ao contínuo maior que gap_factor × espaçamento
    mediano. Gaps entre 1× e gap_factor× são ambíguos e ficam na banda.
    """
    eps = spectrum.quasienergies
    weights = np.sum(np.abs(spectrum.modes[list(model.system_indices), :]) ** 2, axis=0)
    candidates = weights > weight_threshold
    band = eps[~candidates]
    classification = ["band"] * eps.size

    ordered = np.sort(eps)
    omega = 2.0 * np.pi / spectrum.period
    spacing = float(np.median(np.diff(np.concatenate([ordered, [ordered[0] + omega]]))))

    for i in np.flatnonzero(candidates):
        gap = float(np.min(_circular_distance(eps[i], band, spectrum.period))) if band.size else np.inf
        if gap > gap_factor * spacing:
            classification[i] = "fbs"
        elif gap > spacing:
            logger.warning("[FBS] estado %d ambíguo: gap %.3g = %.1f× espaçamento", i, gap,
                           gap / spacing)
    spectrum.classification = classification
    spectrum.band_edges = _band_edges(eps[[c == "band" for c in classification]], spectrum.period)
    fbs = spectrum.fbs_indices
    logger.info("[FBS] %d estado(s) ligado(s) de Floquet", len(fbs))
    return fbs


def analyze(model: PiecewiseModel, **criteria) -> FloquetSpectrum:
    """Propagador, espectro e classificação em uma chamada."""
    spectrum = quasienergy_spectrum(one_period_propagator(model), model.period)
    detect_fbs(spectrum, model, **criteria)
    return spectrum


# =============================================================================
# EVOLUÇÃO ESTROBOSCÓPICA
# =============================================================================

def _sample_rows(model: PiecewiseModel, spectrum: FloquetSpectrum, rows: Sequence[int],
                 samples_per_period: int) -> Tuple[np.ndarray, np.ndarray]:
    """(U(s_k)Φ)[rows, :] para s_k = kT/K, k = 0..K−1."""
    eigensystems = _piece_eigensystems(model)
    starts = model.boundaries
    offsets = np.arange(samples_per_period) * model.period / samples_per_period
    rows = list(rows)
    out = np.empty((samples_per_period, len(rows), model.dim), dtype=complex)
    prefix = spectrum.modes.copy()
    piece = 0
    projected = eigensystems[0][1].conj().T @ prefix
    for k, s in enumerate(offsets):
        while piece < len(model.pieces) - 1 and s >= starts[piece + 1]:
            prefix = _evolve_piece(eigensystems[piece], model.pieces[piece][1]) @ prefix
            piece += 1
            projected = eigensystems[piece][1].conj().T @ prefix
        energies, vectors = eigensystems[piece]
        phase = np.exp(-1j * energies * (s - starts[piece]))
        out[k] = (vectors[rows, :] * phase) @ projected
    return offsets, out


def _expand(spectrum: FloquetSpectrum, psi0: np.ndarray) -> np.ndarray:
    coefficients = spectrum.modes.conj().T @ psi0
    completeness = abs(np.sum(np.abs(coefficients) ** 2) - np.sum(np.abs(psi0) ** 2))
    if completeness > 1e-10:
        raise NonUnitaryError(f"[FLOQUET] completude violada: {completeness:.3e}")
    return coefficients


def stroboscopic_evolve(model: PiecewiseModel, psi0: Optional[np.ndarray], n_periods: int,
                        samples_per_period: int = 1, vacuum_amplitude: complex = 0.0,
                        spectrum: Optional[FloquetSpectrum] = None) -> StroboscopicSeries:
    """
    Evolução exata por partes amostrada em t = nT + kT/K.

    Args:
        model: Modelo constante por partes
        psi0: Estado inicial no setor de uma excitação (None: excitação no
            índice inicial do modelo)
        n_periods: Número de períodos
        samples_per_period: Amostras K por período
        vacuum_amplitude: Componente de vácuo (energia zero); quando não nula
            calcula a fidelidade com o estado inicial do sistema

    Returns:
        StroboscopicSeries com observável = escala·|c_obs(t)|².
    """
    if n_periods < 1 or samples_per_period < 1:
        raise ScenarioValidationError("n_periods e samples_per_period devem ser ≥ 1.",
                                      key="n_periods")
    if psi0 is None:
        psi0 = np.zeros(model.dim, dtype=complex)
        psi0[model.initial_index] = 1.0
    psi0 = np.asarray(psi0, dtype=complex)
    norm = np.sum(np.abs(psi0) ** 2) + abs(vacuum_amplitude) ** 2
    if abs(norm - 1.0) > 1e-10:
        raise ScenarioValidationError(f"Estado inicial não normalizado: {norm!r}", key="psi0")

    spectrum = spectrum or quasienergy_spectrum(one_period_propagator(model), model.period)
    coefficients = _expand(spectrum, psi0)
    offsets, rows = _sample_rows(model, spectrum, [model.observable_index], samples_per_period)

    periods = np.arange(n_periods)
    phases = spectrum.eigenvalues[None, :] ** periods[:, None]
    # amplitude no sítio observado: (n, k)
    amplitudes = np.einsum("nd,kd->nk", phases * coefficients[None, :], rows[:, 0, :])
    t = (periods[:, None] * model.period + offsets[None, :]).ravel()
    amplitude = amplitudes.ravel()
    population = np.abs(amplitude) ** 2

    fidelity_series = None
    if vacuum_amplitude != 0.0:
        system0 = np.array([psi0[model.observable_index], vacuum_amplitude])
        rho_s = np.empty((amplitude.size, 2, 2), dtype=complex)
        rho_s[:, 0, 0] = population
        rho_s[:, 1, 1] = 1.0 - population
        rho_s[:, 0, 1] = amplitude * np.conj(vacuum_amplitude)
        rho_s[:, 1, 0] = np.conj(rho_s[:, 0, 1])
        fidelity_series = fidelity(rho_s, system0)

    norm_error = float(abs(np.sum(np.abs(coefficients) ** 2) - np.sum(np.abs(psi0) ** 2)))
    return StroboscopicSeries(t=t, observable=model.observable_scale * population,
                              fidelity=fidelity_series, norm_error=norm_error)


def asymptotic_projection(spectrum: FloquetSpectrum, model: PiecewiseModel,
                          psi0: Optional[np.ndarray] = None, n_periods: int = 20,
                          samples_per_period: int = 16) -> AsymptoticProjection:
    """
    Valor de longo prazo do observável a partir apenas das FBS.

    0 FBS → 0; 1 FBS → valor periódico com o acionamento; 2 FBS → oscilação
    com batimento Δε₀ = |ε₀₁ − ε₀₂| (distância circular).
    """
    if psi0 is None:
        psi0 = np.zeros(model.dim, dtype=complex)
        psi0[model.initial_index] = 1.0
    fbs = spectrum.fbs_indices
    offsets = np.arange(samples_per_period) * model.period / samples_per_period
    t = (np.arange(n_periods)[:, None] * model.period + offsets[None, :]).ravel()
    if not fbs:
        return AsymptoticProjection(n_fbs=0, mean_value=0.0, beat_frequency=None,
                                    t=t, reconstruction=np.zeros(t.size))

    coefficients = _expand(spectrum, np.asarray(psi0, dtype=complex))
    mask = np.zeros(coefficients.size, dtype=bool)
    mask[fbs] = True
    restricted = np.where(mask, coefficients, 0.0)
    _, rows = _sample_rows(model, spectrum, [model.observable_index], samples_per_period)
    phases = spectrum.eigenvalues[None, :] ** np.arange(n_periods)[:, None]
    amplitudes = np.einsum("nd,kd->nk", phases * restricted[None, :], rows[:, 0, :]).ravel()
    reconstruction = model.observable_scale * np.abs(amplitudes) ** 2

    beat = None
    if len(fbs) >= 2:
        eps = spectrum.quasienergies[fbs]
        beat = float(_circular_distance(eps[0], eps[1], spectrum.period))
    return AsymptoticProjection(n_fbs=len(fbs), mean_value=float(np.mean(reconstruction)),
                                beat_frequency=beat, t=t, reconstruction=reconstruction)
