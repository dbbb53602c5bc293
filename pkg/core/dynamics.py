"""
PyBound - Módulo de Dinâmica Exata
Resolve a equação integro-diferencial da amplitude u(t), deriva os
coeficientes locais da equação mestra (temperatura zero e finita) e propaga
estados reduzidos de qubits e do oscilador.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Optional, Tuple, Union

import numpy as np
from scipy import linalg, special

from .errors import DimensionError, KernelError, ScenarioValidationError, StepSizeError
from .spectra import (
    BoundState,
    DiscreteModes,
    SpectralDensity,
    SpectralKind,
    evaluate_J,
    fourier_band,
    kernel_f,
    level_shift,
)

logger = logging.getLogger(__name__)

# |u| abaixo disso: taxas indefinidas no nó
U_ZERO_TOL = 1e-12
# janela final usada na média assintótica das taxas
ASYMPTOTIC_FRACTION = 0.1
# taxa "nula" relativa a πJ(ω₀)
VANISHING_RATE_RTOL = 1e-3
OHMIC_SERIES_TERMS = 400
MAX_GHZ_QUBITS = 10


# =============================================================================
# DATA CLASSES - Trajetórias e Taxas
# =============================================================================

@dataclass
class AmplitudeTrajectory:
    """u(t) em malha uniforme, com v(t) opcional do caso térmico."""
    t: np.ndarray
    u: np.ndarray
    udot: np.ndarray
    omega0: float
    v: Optional[np.ndarray] = None
    vdot: Optional[np.ndarray] = None
    beta: Optional[float] = None

    @property
    def h(self) -> float:
        return float(self.t[1] - self.t[0]) if len(self.t) > 1 else 0.0

    @property
    def population(self) -> np.ndarray:
        """|u(t)|²."""
        return np.abs(self.u) ** 2

    def columns(self) -> Dict[str, np.ndarray]:
        """Colunas exportáveis (t, Re u, Im u, |u|², v)."""
        cols = {
            "t": self.t,
            "re_u": self.u.real,
            "im_u": self.u.imag,
            "abs_u2": self.population,
        }
        if self.v is not None:
            cols["v"] = self.v
        return cols


@dataclass
class RateFunctions:
    """
    Coeficientes da equação mestra por nó.

    gamma é a taxa de população (dP/dt = −γP); Gamma = γ/2 é a taxa de
    amplitude usada na equação do oscilador. Nós com |u| < 1e-12 ficam NaN
    e marcados em `defined`.
    """
    t: np.ndarray
    gamma: np.ndarray
    omega: np.ndarray
    defined: np.ndarray
    gamma_beta: Optional[np.ndarray] = None

    @property
    def Gamma(self) -> np.ndarray:
        return 0.5 * self.gamma

    def columns(self) -> Dict[str, np.ndarray]:
        cols = {"gamma": self.gamma, "omega": self.omega}
        if self.gamma_beta is not None:
            cols["gamma_beta"] = self.gamma_beta
        return cols


@dataclass
class AsymptoticRates:
    """Médias de cauda de Γ, Ω e Γ_β."""
    Gamma: float
    Omega: float
    Gamma_beta: Optional[float] = None


@dataclass
class EffectiveTemperature:
    """T_eff (k_B = 1) e estado: finite, divergent ou undefined."""
    value: float
    status: str

    @property
    def is_finite(self) -> bool:
        return self.status == "finite"


@dataclass
class StateSeries:
    """Série temporal de estados reduzidos e observáveis derivados."""
    t: np.ndarray
    kind: str
    rho: Optional[np.ndarray] = None
    observables: Dict[str, np.ndarray] = field(default_factory=dict)


# =============================================================================
# ESPECIFICAÇÃO DE ESTADO INICIAL
# =============================================================================

@dataclass
class QubitState:
    """Qubit único, base [e, g]."""
    rho0: np.ndarray

    kind = "qubit"


@dataclass
class BellState:
    """(|gg⟩ + |ee⟩)/√2 com banhos independentes."""
    kind = "bell"


@dataclass
class GHZState:
    """(|g⟩^⊗n + |e⟩^⊗n)/√2, estado codificado do Ramsey."""
    n: int

    kind = "ghz"


@dataclass
class OscillatorState:
    """Oscilador com número médio inicial de fótons N(0) = |α₀|²."""
    n0: float

    kind = "oscillator"


StateSpec = Union[QubitState, BellState, GHZState, OscillatorState]


# =============================================================================
# SOLVER DE VOLTERRA
# =============================================================================

def _time_grid(t_end: float, h: float) -> np.ndarray:
    if not (math.isfinite(t_end) and t_end > 0):
        raise ScenarioValidationError("t_end deve ser positivo e finito.", key="grid.t_end")
    if not (math.isfinite(h) and h > 0):
        raise ScenarioValidationError("h deve ser positivo e finito.", key="grid.h")
    n_steps = max(int(round(t_end / h)), 1)
    if abs(n_steps * h - t_end) > 1e-9 * t_end:
        logger.info("[VOLTERRA] t_end/h não inteiro; passo ajustado para %.6g", t_end / n_steps)
    return np.linspace(0.0, t_end, n_steps + 1)


def solve_u(sd: SpectralDensity, omega0: float, t_end: float, h: float,
            kernel_method: str = "auto") -> AmplitudeTrajectory:
    """
    Resolve u̇ + iω₀u + ∫₀^t f(t−τ)u(τ)dτ = 0 com u(0) = 1.

    Esquema trapezoidal implícito: a memória usa trapézio composto sobre o
    histórico armazenado e o corretor, linear em u_n, é resolvido exatamente.

    Args:
        sd: Densidade espectral do ambiente
        omega0: Frequência do sistema
        t_end: Tempo final
        h: Passo de tempo

    Returns:
        AmplitudeTrajectory com u e u̇ em cada nó.

    Raises:
        StepSizeError: ω₀h ≥ 0.5. O passo é rejeitado, não apenas avisado;
            o aviso fica para h·sqrt|f(0)| > 0.3, que só degrada a memória.
        KernelError: núcleo não finito na malha.
    """
    if not (math.isfinite(omega0) and omega0 > 0):
        raise ScenarioValidationError("omega0 deve ser positivo.", key="omega0")
    t = _time_grid(t_end, h)
    h = float(t[1] - t[0])
    if omega0 * h >= 0.5:
        raise StepSizeError(f"[VOLTERRA] ω₀h = {omega0 * h:.3g} ≥ 0.5; reduza o passo.")

    f = np.asarray(kernel_f(sd, t, method=kernel_method), dtype=complex)
    if not np.all(np.isfinite(f)):
        raise KernelError("[VOLTERRA] núcleo de memória não finito na malha.")
    if h * math.sqrt(abs(f[0])) > 0.3:
        logger.warning("[VOLTERRA] h·sqrt|f(0)| = %.3g: passo grosso para a memória",
                       h * math.sqrt(abs(f[0])))

    n_nodes = len(t)
    u = np.zeros(n_nodes, dtype=complex)
    udot = np.zeros(n_nodes, dtype=complex)
    u[0] = 1.0
    udot[0] = -1j * omega0
    denominator = 1.0 + 0.5 * h * (1j * omega0 + 0.5 * h * f[0])

    for n in range(1, n_nodes):
        # memória sem o termo implícito ½f₀u_n
        history = 0.5 * f[n] * u[0]
        if n > 1:
            history += np.dot(f[n - 1:0:-1], u[1:n])
        history *= h
        u[n] = (u[n - 1] + 0.5 * h * (udot[n - 1] - history)) / denominator
        udot[n] = -1j * omega0 * u[n] - history - 0.5 * h * f[0] * u[n]

    logger.debug("[VOLTERRA] %d passos, |u(t_end)|² = %.6g", n_nodes - 1, abs(u[-1]) ** 2)
    return AmplitudeTrajectory(t=t, u=u, udot=udot, omega0=omega0)


def markovian_u(sd: SpectralDensity, omega0: float, t: np.ndarray) -> np.ndarray:
    """u_MA(t) = exp{−[κ + i(ω₀ + Δ(ω₀))]t}, κ = πJ(ω₀)."""
    kappa = math.pi * float(evaluate_J(sd, omega0))
    shift = level_shift(sd, omega0)
    return np.exp(-(kappa + 1j * (omega0 + shift)) * np.asarray(t, dtype=float))


def discrete_bath_u(modes: DiscreteModes, omega0: float, t: np.ndarray) -> np.ndarray:
    """
    Oráculo de banho discreto: diagonaliza o Hamiltoniano de uma excitação
    (K+1)×(K+1) e devolve u(t) = ⟨e|e^{−iHt}|e⟩.
    """
    k = modes.frequencies.size
    hamiltonian = np.zeros((k + 1, k + 1), dtype=complex)
    hamiltonian[0, 0] = omega0
    hamiltonian[0, 1:] = np.conj(modes.couplings)
    hamiltonian[1:, 0] = modes.couplings
    hamiltonian[np.arange(1, k + 1), np.arange(1, k + 1)] = modes.frequencies
    energies, vectors = linalg.eigh(hamiltonian)
    overlaps = np.abs(vectors[0, :]) ** 2
    return np.exp(-1j * np.multiply.outer(np.asarray(t, dtype=float), energies)) @ overlaps


# =============================================================================
# DECOMPOSIÇÃO ESPECTRAL
# =============================================================================

def decompose_u(sd: SpectralDensity, omega0: float, bound: Optional[BoundState],
                t: float) -> complex:
    """
    u(t) = Z e^{−iE_b t} + ∫ J(E) e^{−iEt} dE / ([E − ω₀ − Δ(E)]² + [πJ(E)]²).

    O pico ressonante do termo de banda é isolado por pontos de quebra em
    torno de ω₀ + Δ(ω₀).
    """
    if sd.kind is SpectralKind.DISCRETE:
        raise ScenarioValidationError("decompose_u requer banda contínua.", key="spectral_density")
    bound_term = 0j if bound is None else bound.residue * np.exp(-1j * bound.energy * t)
    if sd.kind is SpectralKind.OHMIC and sd.eta == 0.0:
        return complex(np.exp(-1j * omega0 * t))

    @lru_cache(maxsize=None)
    def shift(energy: float) -> float:
        return level_shift(sd, energy)

    def resolvent(energy: float) -> float:
        if energy <= 0.0:
            return 0.0
        J = float(evaluate_J(sd, energy))
        return 1.0 / ((energy - omega0 - shift(energy)) ** 2 + (math.pi * J) ** 2)

    center = omega0 + shift(omega0)
    width = max(10.0 * math.pi * float(evaluate_J(sd, omega0)), 1e-3 * omega0)
    breakpoints = [p for p in (center - width, center, center + width) if p > 0]
    band = fourier_band(sd, t, weight=resolvent, breakpoints=breakpoints,
                        label="u_banda", abs_scale=1.0)
    return complex(bound_term + band)


# =============================================================================
# TAXAS
# =============================================================================

def rates_from_u(traj: AmplitudeTrajectory) -> RateFunctions:
    """γ = −2 Re(u̇/u), ω = −Im(u̇/u); NaN onde |u| < 1e-12."""
    defined = np.abs(traj.u) >= U_ZERO_TOL
    ratio = np.full(traj.u.shape, np.nan, dtype=complex)
    ratio[defined] = traj.udot[defined] / traj.u[defined]
    if not np.all(defined):
        logger.info("[VOLTERRA] %d nós com |u| ≈ 0: taxas indefinidas", int(np.sum(~defined)))
    gamma_beta = None
    if traj.v is not None:
        gamma_beta = traj.vdot - 2.0 * traj.v * ratio.real
    return RateFunctions(t=traj.t, gamma=-2.0 * ratio.real, omega=-ratio.imag,
                         defined=defined, gamma_beta=gamma_beta)


def asymptotic_rates(rates: RateFunctions, fraction: float = ASYMPTOTIC_FRACTION) -> AsymptoticRates:
    """Média de Γ, Ω, Γ_β sobre a fração final da malha."""
    if not 0 < fraction <= 1:
        raise ScenarioValidationError("fraction deve estar em (0, 1].", key="fraction")
    start = int(math.floor(len(rates.t) * (1.0 - fraction)))
    start = min(start, len(rates.t) - 1)

    def tail(values: np.ndarray) -> float:
        window = values[start:]
        window = window[np.isfinite(window)]
        return float(np.mean(window)) if window.size else float("nan")

    return AsymptoticRates(
        Gamma=tail(rates.Gamma),
        Omega=tail(rates.omega),
        Gamma_beta=tail(rates.gamma_beta) if rates.gamma_beta is not None else None,
    )


# =============================================================================
# TEMPERATURA FINITA
# =============================================================================

def bose(omega: Union[float, np.ndarray], beta: float) -> Union[float, np.ndarray]:
    """n̄(ω) = 1/(e^{βω} − 1)."""
    if math.isinf(beta):
        return np.zeros_like(np.asarray(omega, dtype=float)) if np.ndim(omega) else 0.0
    with np.errstate(divide="ignore"):
        return 1.0 / np.expm1(beta * np.asarray(omega, dtype=float))


def thermal_kernel(sd: SpectralDensity, beta: float, dt: np.ndarray) -> np.ndarray:
    """
    μ(Δt) = ∫ n̄(ω)J(ω)e^{−iωΔt} dω.

    Ohmic: n̄ = Σ_m e^{−mβω} dá Γ(s+1)ηω_ref^{1−s}Σ_m (1/ω_c + mβ + iΔt)^{−(s+1)};
    a soma é truncada em M termos com cauda integral.
    """
    dt = np.atleast_1d(np.asarray(dt, dtype=float))
    if sd.kind is SpectralKind.DISCRETE:
        if np.any(sd.frequencies <= 0):
            raise KernelError("[THERMAL] modo com ω_k = 0 tem ocupação divergente.")
        occupation = bose(sd.frequencies, beta)
        return np.exp(-1j * np.multiply.outer(dt, sd.frequencies)) @ (occupation * sd.weights)

    if sd.kind is SpectralKind.OHMIC:
        m = np.arange(1, OHMIC_SERIES_TERMS + 1)
        base = 1.0 / sd.omega_c + 1j * dt
        terms = (base[:, None] + beta * m[None, :]) ** (-(sd.s + 1.0))
        tail = (base + (OHMIC_SERIES_TERMS + 0.5) * beta) ** (-sd.s) / (sd.s * beta)
        return sd.prefactor * special.gamma(sd.s + 1.0) * (terms.sum(axis=1) + tail)

    return np.array([fourier_band(sd, float(x), weight=lambda w: float(bose(w, beta)),
                                  label="μ") for x in dt])


def solve_thermal(sd: SpectralDensity, omega0: float, beta: float,
                  traj: AmplitudeTrajectory) -> Tuple[AmplitudeTrajectory, RateFunctions]:
    """
    v(t) = ∬_{[0,t]²} u*(t₁)μ(t₁−t₂)u(t₂) e Γ_β = v̇ + 2vΓ.

    A soma dupla de trapézios é mantida incrementalmente: Q_n acumula a
    matriz com peso unitário na borda e r_n é a linha nova.
    """
    if not (beta > 0):
        raise ScenarioValidationError("beta deve ser positivo.", key="beta")
    n_nodes = len(traj.t)
    h = traj.h
    if math.isinf(beta):
        v = np.zeros(n_nodes)
        vdot = np.zeros(n_nodes)
    else:
        mu = thermal_kernel(sd, beta, traj.t)
        a = traj.u
        edge = np.ones(n_nodes)
        edge[0] = 0.5
        weighted = edge * a
        v = np.zeros(n_nodes)
        vdot = np.zeros(n_nodes)
        q = 0.0
        for n in range(n_nodes):
            row = np.conj(a[n]) * np.dot(mu[n::-1], weighted[:n + 1])
            diag = mu[0].real * abs(a[n]) ** 2
            if n == 0:
                q = 0.25 * diag
            else:
                q += 2.0 * row.real - diag
            v[n] = h * h * (q - row.real + 0.25 * diag)
            vdot[n] = 2.0 * h * (row - 0.5 * diag).real
        if np.min(v) < -1e-8 * max(np.max(np.abs(v)), 1.0):
            logger.warning("[THERMAL] v(t) negativo além da tolerância: %.3g", np.min(v))

    thermal = AmplitudeTrajectory(t=traj.t, u=traj.u, udot=traj.udot, omega0=omega0,
                                  v=v, vdot=vdot, beta=beta)
    return thermal, rates_from_u(thermal)


def effective_temperature(Gamma_inf: float, Gamma_beta_inf: float, omega: float,
                          rate_scale: float) -> EffectiveTemperature:
    """
    T_eff = ω/ln(1 + 2Γ(∞)/Γ_β(∞)).

    Args:
        Gamma_inf: Γ(∞), taxa de amplitude assintótica
        Gamma_beta_inf: Γ_β(∞)
        omega: Frequência do oscilador (ω₀ ou a renormalizada Ω(∞))
        rate_scale: πJ(ω₀), escala para decidir taxas nulas
    """
    threshold = VANISHING_RATE_RTOL * rate_scale
    if abs(Gamma_inf) < threshold and abs(Gamma_beta_inf) < threshold:
        return EffectiveTemperature(value=float("inf"), status="divergent")
    if not (math.isfinite(Gamma_inf) and math.isfinite(Gamma_beta_inf)) \
            or Gamma_inf <= 0 or Gamma_beta_inf < 0:
        return EffectiveTemperature(value=float("nan"), status="undefined")
    if Gamma_beta_inf == 0.0:
        return EffectiveTemperature(value=0.0, status="finite")
    return EffectiveTemperature(value=omega / math.log1p(2.0 * Gamma_inf / Gamma_beta_inf),
                                status="finite")


def steady_state_distribution(Gamma_inf: float, Gamma_beta_inf: float, n_max: int) -> np.ndarray:
    """p_n = x^n/(1+x)^{n+1}, x = Γ_β/(2Γ), para n = 0..n_max."""
    if Gamma_inf <= 0 or Gamma_beta_inf < 0:
        raise ScenarioValidationError("estado estacionário exige Γ(∞) > 0 e Γ_β(∞) ≥ 0.",
                                      key="rates")
    x = Gamma_beta_inf / (2.0 * Gamma_inf)
    n = np.arange(n_max + 1)
    return x ** n / (1.0 + x) ** (n + 1)


# =============================================================================
# PROPAGAÇÃO DE ESTADOS
# =============================================================================

def ghz_state(u: complex, n: int) -> np.ndarray:
    """
    ρ(t) = ½{[|u|²|e⟩⟨e| + (1−|u|²)|g⟩⟨g|]^⊗n + |g⟩⟨g|^⊗n + [uⁿ|e⟩⟨g|^⊗n + h.c.]}.

    Base computacional com |e⟩ = índice 0 em cada qubit.
    """
    if n < 1:
        raise ScenarioValidationError("n deve ser ≥ 1.", key="n")
    if n > MAX_GHZ_QUBITS:
        raise DimensionError(f"GHZ com n = {n} excede {MAX_GHZ_QUBITS} qubits.")
    p = abs(u) ** 2
    single = np.diag([p, 1.0 - p]).astype(complex)
    product = single
    for _ in range(n - 1):
        product = np.kron(product, single)
    dim = 2 ** n
    rho = 0.5 * product
    rho[dim - 1, dim - 1] += 0.5
    rho[0, dim - 1] += 0.5 * u ** n
    rho[dim - 1, 0] += 0.5 * np.conj(u) ** n
    return rho


def propagate(traj: AmplitudeTrajectory, rates: Optional[RateFunctions],
              initial: StateSpec) -> StateSeries:
    """
    Propaga o estado inicial em forma fechada em u(t).

    Qubits (base [e, g]): ρ_ee → |u|²ρ_ee, ρ_eg → uρ_eg. Bell e GHZ seguem a
    forma produto com coerência uⁿ. O oscilador usa N(t) = |u|²N(0) + v(t),
    solução exata de dN/dt = −2ΓN + Γ_β.
    """
    u = traj.u
    p = np.abs(u) ** 2
    if isinstance(initial, QubitState):
        rho0 = np.asarray(initial.rho0, dtype=complex)
        if rho0.shape != (2, 2):
            raise ScenarioValidationError("rho0 deve ser 2×2.", key="initial.rho0")
        rho = np.empty((len(u), 2, 2), dtype=complex)
        rho[:, 0, 0] = p * rho0[0, 0]
        rho[:, 1, 1] = 1.0 - rho[:, 0, 0]
        rho[:, 0, 1] = u * rho0[0, 1]
        rho[:, 1, 0] = np.conj(rho[:, 0, 1])
        return StateSeries(t=traj.t, kind="qubit", rho=rho,
                           observables={"excited_population": rho[:, 0, 0].real})
    if isinstance(initial, (BellState, GHZState)):
        n = 2 if isinstance(initial, BellState) else initial.n
        rho = np.array([ghz_state(x, n) for x in u])
        observables = {"coherence": np.abs(u) ** n}
        if n == 2:
            observables["concurrence_closed"] = np.maximum(0.0, p ** 2)
        return StateSeries(t=traj.t, kind=initial.kind, rho=rho, observables=observables)
    if isinstance(initial, OscillatorState):
        if initial.n0 < 0:
            raise ScenarioValidationError("N(0) deve ser ≥ 0.", key="initial.n0")
        v = traj.v if traj.v is not None else np.zeros_like(p)
        return StateSeries(t=traj.t, kind="oscillator",
                           observables={"mean_photon_number": p * initial.n0 + v})
    raise ScenarioValidationError(f"StateSpec não suportado: {type(initial).__name__}",
                                  key="initial")
