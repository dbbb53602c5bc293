"""
PyBound - Módulo de Métricas
Figuras de mérito calculadas a partir das trajetórias: concorrência,
distância de traço, não-Markovianidade, tempo de limite quântico de
velocidade, fidelidade e precisões de metrologia (MZI e Ramsey).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy import interpolate, linalg, optimize

from .dynamics import AmplitudeTrajectory
from .errors import NumericalError, ScenarioValidationError

logger = logging.getLogger(__name__)

PHYSICAL_TOL = 1e-8
# passo relativo da diferença central em ω₀
DERIVATIVE_STEP = 1e-4
UNDEFINED_DERIVATIVE = 1e-300

SIGMA_Y = np.array([[0.0, -1j], [1j, 0.0]])
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)


# =============================================================================
# DATA CLASSES
# =============================================================================

@dataclass
class QSLResult:
    """τ_QSL com flag de estado estacionário (|u(τ)| = 1 sem variação)."""
    tau_qsl: float
    tau: float
    stationary: bool
    non_markovianity: float


@dataclass
class PrecisionCurve:
    """
    δ por tempo de codificação, com limites analíticos associados.

    Pontos com derivada nula ficam NaN e marcados em `defined`.
    """
    t: np.ndarray
    delta: np.ndarray
    resource: float
    scheme: str
    defined: np.ndarray
    limits: Dict[str, np.ndarray] = field(default_factory=dict)

    def columns(self) -> Dict[str, np.ndarray]:
        cols = {"t": self.t, "delta": self.delta}
        cols.update({f"limit_{tag}": np.broadcast_to(value, self.t.shape)
                     for tag, value in self.limits.items()})
        return cols


# =============================================================================
# ESTADOS
# =============================================================================

def _psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    values, vectors = linalg.eigh(matrix)
    return (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.conj().T


def validate_density_matrix(rho: np.ndarray, dim: Optional[int] = None,
                            tol: float = PHYSICAL_TOL) -> np.ndarray:
    """Verifica hermiticidade, traço unitário e positividade."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or (dim and rho.shape[0] != dim):
        raise ScenarioValidationError(f"Matriz densidade com forma inválida: {rho.shape}", key="rho")
    errors = []
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        errors.append("não hermitiana")
    if abs(np.trace(rho) - 1.0) > tol:
        errors.append(f"traço {np.trace(rho).real:.6g} ≠ 1")
    if np.min(linalg.eigvalsh(0.5 * (rho + rho.conj().T))) < -tol:
        errors.append("autovalor negativo")
    if errors:
        raise ScenarioValidationError("Estado não físico: " + ", ".join(errors), key="rho")
    return 0.5 * (rho + rho.conj().T)


def concurrence(rho: np.ndarray) -> float:
    """
    Concorrência de Wootters de um estado de dois qubits.

    C = max{0, λ₁ − λ₂ − λ₃ − λ₄}, λᵢ autovalores decrescentes de
    sqrt(sqrt(ρ) ρ̃ sqrt(ρ)), ρ̃ = (σ_y⊗σ_y)ρ*(σ_y⊗σ_y).
    """
    rho = validate_density_matrix(rho, dim=4)
    rho_tilde = SIGMA_YY @ rho.conj() @ SIGMA_YY
    root = _psd_sqrt(rho)
    product = root @ rho_tilde @ root
    lambdas = np.sqrt(np.clip(linalg.eigvalsh(0.5 * (product + product.conj().T)), 0.0, None))
    lambdas = np.sort(lambdas)[::-1]
    return float(min(1.0, max(0.0, lambdas[0] - lambdas[1:].sum())))


def trace_distance(rho1: np.ndarray, rho2: np.ndarray) -> float:
    """D = ½ Tr|ρ₁ − ρ₂|."""
    diff = np.asarray(rho1, dtype=complex) - np.asarray(rho2, dtype=complex)
    return float(0.5 * np.sum(np.abs(linalg.eigvalsh(0.5 * (diff + diff.conj().T)))))


def fidelity(rho_t: np.ndarray, psi0: np.ndarray) -> np.ndarray:
    """⟨ψ₀|ρ_t|ψ₀⟩ para referência pura; aceita pilha de estados (..., d, d)."""
    psi = np.asarray(psi0, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    value = np.einsum("i,...ij,j->...", psi.conj(), np.asarray(rho_t, dtype=complex), psi).real
    return np.clip(value, 0.0, 1.0)


# =============================================================================
# NÃO-MARKOVIANIDADE E QSL
# =============================================================================

def _window(traj: AmplitudeTrajectory, horizon: Optional[float]) -> Tuple[np.ndarray, np.ndarray]:
    population = traj.population
    if horizon is None:
        return traj.t, population
    if not (0 < horizon <= traj.t[-1] * (1 + 1e-12)):
        raise ScenarioValidationError("horizonte fora da malha.", key="tau")
    stop = int(np.searchsorted(traj.t, horizon * (1 + 1e-12), side="right"))
    return traj.t[:stop], population[:stop]


def non_markovianity(traj: AmplitudeTrajectory, horizon: Optional[float] = None) -> float:
    """
    𝒩 para o par ótimo |g⟩, |e⟩, com D(t) = |u(t)|².

    Calcula ½[D(τ) − 1 + ∫|Ḋ|] e a integral de σ > 0; as duas formas são
    idênticas na malha (variação total discreta).
    """
    _, population = _window(traj, horizon)
    steps = np.diff(population)
    total_variation = float(np.sum(np.abs(steps)))
    closed = 0.5 * (population[-1] - population[0] + total_variation)
    backflow = float(np.sum(steps[steps > 0]))
    if not math.isclose(closed, backflow, rel_tol=1e-9, abs_tol=1e-12):
        raise NumericalError(f"𝒩 inconsistente: {closed!r} vs {backflow!r}")
    return max(backflow, 0.0)


def qsl_time(traj: AmplitudeTrajectory, tau: Optional[float] = None) -> QSLResult:
    """
    τ_QSL = (1 − |u(τ)|²)/((1/τ)∫₀^τ |∂_t|u|²| dt).

    Satisfaz τ_QSL = τ(1 − |u(τ)|²)/(1 − |u(τ)|² + 2𝒩).
    """
    t, population = _window(traj, tau)
    tau = float(t[-1])
    total_variation = float(np.sum(np.abs(np.diff(population))))
    nm = non_markovianity(traj, tau)
    if total_variation == 0.0:
        return QSLResult(tau_qsl=0.0, tau=tau, stationary=True, non_markovianity=nm)
    tau_qsl = tau * (population[0] - population[-1]) / total_variation
    return QSLResult(tau_qsl=tau_qsl, tau=tau, stationary=False, non_markovianity=nm)


# =============================================================================
# METROLOGIA - LIMITES ANALÍTICOS
# =============================================================================

def snl_limit(t, n_photons):
    """(t√N)⁻¹."""
    return 1.0 / (np.asarray(t, dtype=float) * math.sqrt(n_photons))


def zeno_limit(t, n_photons):
    """(t N^{3/4})⁻¹."""
    return 1.0 / (np.asarray(t, dtype=float) * n_photons ** 0.75)


def heisenberg_limit(t, n_atoms: int, total_time: float):
    """(n²Tt)^{−1/2}."""
    return (n_atoms ** 2 * total_time * np.asarray(t, dtype=float)) ** -0.5


def mzi_ideal_minimum(t, n_photons: float, beta_frac: float):
    """[(1−β)e^{−2r} + β]^{1/2}/(t√N|1−2β|), sinh²r = βN."""
    r = math.asinh(math.sqrt(beta_frac * n_photons))
    numerator = math.sqrt((1.0 - beta_frac) * math.exp(-2.0 * r) + beta_frac)
    return numerator / (np.asarray(t, dtype=float) * math.sqrt(n_photons) * abs(1.0 - 2.0 * beta_frac))


def mzi_markovian_curve(t, kappa: float, n_photons: float):
    """[(e^{2κt} − 1)/(2Nt²)]^{1/2} com β = (2√N)⁻¹."""
    t = np.asarray(t, dtype=float)
    return np.sqrt(np.expm1(2.0 * kappa * t) / (2.0 * n_photons * t ** 2))


def mzi_markovian_minimum(kappa: float, n_photons: float) -> float:
    """eκ(2N)^{−1/2}, atingido em t = 1/κ."""
    return math.e * kappa / math.sqrt(2.0 * n_photons)


def mzi_bound_state_limit(t, n_photons: float, residue: float):
    """(tN^{3/4})⁻¹ Z⁻¹ [1 + (1 − Z²)√N/(2Z²)]^{1/2}."""
    correction = math.sqrt(1.0 + (1.0 - residue ** 2) / (2.0 * residue ** 2) * math.sqrt(n_photons))
    return zeno_limit(t, n_photons) * correction / residue


def ramsey_markovian_limit(n_atoms: int, total_time: float, kappa: float) -> float:
    """
    Melhor δω₀ sob u = e^{−(κ+iΩ)t}: (nT/(2κe))^{−1/2}, em t = 1/(2nκ).

    κ é a taxa de amplitude; com a taxa de população 2κ recupera-se (nT/κe)^{−1/2}.
    """
    return (n_atoms * total_time / (2.0 * kappa * math.e)) ** -0.5


def ramsey_bound_state_limit(t, n_atoms: int, total_time: float, residue: float):
    """Z^{−(n+1)}(n²Tt)^{−1/2}, com ∂E_b/∂ω₀ = Z."""
    return residue ** -(n_atoms + 1) * heisenberg_limit(t, n_atoms, total_time)


# =============================================================================
# METROLOGIA - PRECISÕES NUMÉRICAS
# =============================================================================

def _mzi_moments(u: np.ndarray, t: np.ndarray, omega0: float, n_photons: float,
                 beta_frac: float, phase_alpha: float,
                 phase_xi: float) -> Tuple[np.ndarray, np.ndarray]:
    sinh2 = beta_frac * n_photons
    r = math.asinh(math.sqrt(sinh2))
    alpha = math.sqrt(n_photons - sinh2) * np.exp(1j * phase_alpha)
    rotated = u * np.exp(1j * omega0 * t)
    mean = rotated.real * (sinh2 - abs(alpha) ** 2)
    squeezed = abs(alpha * math.cosh(r) - np.conj(alpha) * math.sinh(r) * np.exp(1j * phase_xi)) ** 2
    variance = (rotated.imag ** 2 * (squeezed + sinh2)
                + rotated.real ** 2 * (abs(alpha) ** 2 + 0.5 * math.sinh(2.0 * r) ** 2)
                + 0.5 * (1.0 - np.abs(u) ** 2) * n_photons)
    return mean, variance


def mzi_precision(u_provider: Callable[[float], np.ndarray], omega0: float, gamma: float,
                  n_photons: float, beta_frac: float, t: np.ndarray,
                  phase_alpha: float = 0.0, phase_xi: float = 0.0,
                  kappa: Optional[float] = None, residue: Optional[float] = None) -> PrecisionCurve:
    """
    δγ = δM/|∂M̄/∂γ| no interferômetro de Mach-Zehnder com luz comprimida.

    Args:
        u_provider: γ → u(t) na malha t, resolvido com frequência ω₀ + γ
        omega0: Frequência do modo
        gamma: Parâmetro codificado
        n_photons: N = |α|² + sinh²r
        beta_frac: β = sinh²r/N ∈ [0, 1)
        t: Tempos de codificação
        phase_alpha: Fase φ do deslocamento
        phase_xi: Fase ϕ da compressão (ótimo em ϕ = 2φ)
        kappa: κ para o limite Markoviano (opcional)
        residue: Z para o limite de estado ligado (opcional)
    """
    if not (0.0 <= beta_frac < 1.0):
        raise ScenarioValidationError("beta_frac deve estar em [0, 1).", key="mzi.beta")
    if n_photons <= 0:
        raise ScenarioValidationError("N deve ser positivo.", key="mzi.N")
    t = np.asarray(t, dtype=float)
    step = DERIVATIVE_STEP * omega0

    def moments(g: float) -> Tuple[np.ndarray, np.ndarray]:
        return _mzi_moments(np.asarray(u_provider(g)), t, omega0, n_photons, beta_frac,
                            phase_alpha, phase_xi)

    _, variance = moments(gamma)
    slope = (moments(gamma + step)[0] - moments(gamma - step)[0]) / (2.0 * step)
    defined = np.abs(slope) > UNDEFINED_DERIVATIVE
    delta = np.full(t.shape, np.nan)
    delta[defined] = np.sqrt(np.clip(variance[defined], 0.0, None)) / np.abs(slope[defined])
    if not np.all(defined):
        logger.info("[MZI] %d tempos com ∂M̄/∂γ = 0", int(np.sum(~defined)))

    limits = {"snl": snl_limit(t, n_photons), "zeno": zeno_limit(t, n_photons),
              "ideal": mzi_ideal_minimum(t, n_photons, beta_frac)}
    if kappa is not None and kappa > 0:
        limits["markovian_min"] = np.full(t.shape, mzi_markovian_minimum(kappa, n_photons))
    if residue is not None:
        limits["bound_state"] = mzi_bound_state_limit(t, n_photons, residue)
    return PrecisionCurve(t=t, delta=delta, resource=n_photons, scheme="mzi",
                          defined=defined, limits=limits)


def ramsey_precision(u_provider: Callable[[float], np.ndarray], omega0: float, n_atoms: int,
                     total_time: float, t: np.ndarray, kappa: Optional[float] = None,
                     residue: Optional[float] = None) -> PrecisionCurve:
    """
    δω₀ = {T[∂_{ω₀}Re(uⁿ)]²/(t[1 − Re²(uⁿ)])}^{−1/2}.

    Args:
        u_provider: ω → u(t) na malha t, resolvido com frequência ω
        omega0: Frequência a estimar
        n_atoms: Número de átomos no estado GHZ
        total_time: Duração total T dos experimentos
        t: Tempos de codificação
    """
    if n_atoms < 1:
        raise ScenarioValidationError("n deve ser ≥ 1.", key="ramsey.n")
    t = np.asarray(t, dtype=float)
    if total_time <= 0 or np.any(t <= 0):
        raise ScenarioValidationError("T e t devem ser positivos.", key="ramsey.T")
    if np.any(t > total_time):
        logger.warning("[RAMSEY] t > T em parte da malha; N = T/t < 1")
    step = DERIVATIVE_STEP * omega0

    def signal(w: float) -> np.ndarray:
        return (np.asarray(u_provider(w)) ** n_atoms).real

    value = signal(omega0)
    slope = (signal(omega0 + step) - signal(omega0 - step)) / (2.0 * step)
    contrast = 1.0 - value ** 2
    defined = (np.abs(slope) > UNDEFINED_DERIVATIVE) & (contrast > UNDEFINED_DERIVATIVE)
    delta = np.full(t.shape, np.nan)
    delta[defined] = (total_time * slope[defined] ** 2 / (t[defined] * contrast[defined])) ** -0.5

    limits = {"hl": heisenberg_limit(t, n_atoms, total_time)}
    if kappa is not None and kappa > 0:
        limits["markovian_min"] = np.full(t.shape, ramsey_markovian_limit(n_atoms, total_time, kappa))
    if residue is not None:
        limits["bound_state"] = ramsey_bound_state_limit(t, n_atoms, total_time, residue)
    return PrecisionCurve(t=t, delta=delta, resource=float(n_atoms), scheme="ramsey",
                          defined=defined, limits=limits)


def minimize_precision(curve: PrecisionCurve) -> Tuple[float, float]:
    """
    Mínimo de δ(t): seção áurea sobre um spline cúbico, no intervalo da
    malha que cerca o menor valor amostrado.
    """
    t = curve.t[curve.defined]
    delta = curve.delta[curve.defined]
    if t.size == 0:
        raise NumericalError("Curva de precisão sem pontos definidos.")
    i = int(np.argmin(delta))
    if i == 0 or i == t.size - 1 or t.size < 4:
        return float(t[i]), float(delta[i])
    lo, hi = max(i - 2, 0), min(i + 3, t.size)
    spline = interpolate.CubicSpline(t[lo:hi], delta[lo:hi])
    result = optimize.minimize_scalar(spline, bracket=(t[i - 1], t[i], t[i + 1]), method="golden")
    if not (t[i - 1] <= result.x <= t[i + 1]) or float(spline(result.x)) > delta[i]:
        return float(t[i]), float(delta[i])
    return float(result.x), float(spline(result.x))
