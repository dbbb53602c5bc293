"""
PyBound - Módulo de Densidades Espectrais
Constrói J(ω), núcleos de memória f(Δt), deslocamentos de nível em valor
principal e resolve a condição de estado ligado sistema-ambiente.

Convenção de unidades: ħ = 1. Frequências, energias e taxas compartilham a
unidade de referência declarada no cenário; o modelo plasmônico usa eV para
energias e nm para distâncias (tempo em ħ/eV).
"""

import logging
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import constants, integrate, optimize, special

from .errors import (
    KernelError,
    QuadratureError,
    RootBracketError,
    ScenarioValidationError,
    SurfacePlasmonPole,
)

logger = logging.getLogger(__name__)

ArrayLike = Union[float, Sequence[float], np.ndarray]

# ħc em eV·nm
HBAR_C_EV_NM = constants.hbar * constants.c / constants.e * 1e9

QUAD_EPSREL = 1e-10
QUAD_LIMIT = 500
# erro estimado acima desta fração do valor aborta a quadratura
QUAD_FAILURE_RTOL = 1e-6


# =============================================================================
# DATA CLASSES - Densidades Espectrais
# =============================================================================

class SpectralKind(Enum):
    """Variante da densidade espectral."""
    OHMIC = "ohmic"
    PLASMONIC = "plasmonic"
    DISCRETE = "discrete"


def _check_finite(**values: float) -> List[str]:
    return [f"{name}: valor não finito ({value!r})."
            for name, value in values.items()
            if value is None or not math.isfinite(value)]


@dataclass(frozen=True)
class OhmicFamily:
    """
    J(ω) = η ω^s ω_ref^{1-s} e^{-ω/ω_c}.

    Com omega_ref=None usa-se ω_ref = ω_c (normalização pelo corte); um valor
    explícito (tipicamente ω₀) seleciona a normalização pela frequência do
    sistema.
    """
    eta: float
    s: float
    omega_c: float
    omega_ref: Optional[float] = None

    kind = SpectralKind.OHMIC

    def __post_init__(self):
        is_valid, errors = self.validate()
        if not is_valid:
            raise ScenarioValidationError("\n".join(errors), key="spectral_density")

    def validate(self) -> Tuple[bool, List[str]]:
        errors = _check_finite(eta=self.eta, s=self.s, omega_c=self.omega_c)
        if self.omega_ref is not None:
            errors += _check_finite(omega_ref=self.omega_ref)
        if errors:
            return False, errors
        if self.eta < 0:
            errors.append("eta: acoplamento deve ser não-negativo.")
        if self.s <= 0:
            errors.append("s: expoente de ohmicidade deve ser positivo.")
        if self.omega_c <= 0:
            errors.append("omega_c: frequência de corte deve ser positiva.")
        if self.omega_ref is not None and self.omega_ref <= 0:
            errors.append("omega_ref: frequência de referência deve ser positiva.")
        return len(errors) == 0, errors

    @property
    def prefactor(self) -> float:
        """η ω_ref^{1-s}."""
        ref = self.omega_c if self.omega_ref is None else self.omega_ref
        return self.eta * ref ** (1.0 - self.s)

    @property
    def scale(self) -> float:
        return self.omega_c

    def evaluate(self, omega: np.ndarray) -> np.ndarray:
        omega = np.asarray(omega, dtype=float)
        positive = np.where(omega > 0, omega, 1.0)
        values = self.prefactor * positive ** self.s * np.exp(-positive / self.omega_c)
        return np.where(omega > 0, values, 0.0)

    def threshold_frequency(self) -> float:
        """ω₀ abaixo do qual há estado ligado: η ω_ref^{1-s} Γ(s) ω_c^s."""
        return self.prefactor * special.gamma(self.s) * self.omega_c ** self.s

    def kernel_closed_form(self, dt: np.ndarray) -> np.ndarray:
        dt = np.asarray(dt, dtype=float)
        base = self.omega_c / (1.0 + 1j * self.omega_c * dt)
        return self.prefactor * special.gamma(self.s + 1.0) * base ** (self.s + 1.0)


@dataclass(frozen=True)
class Plasmonic:
    """
    Emissor a distância dz (nm) de uma interface metal-dielétrico plana.

    Energias em eV. O metal segue o modelo de Drude
    ε_m = ε_∞ − ω_p²/(ω(ω + iγ_p)). Como J cresce com ω³, a banda é truncada
    em omega_max (padrão: 3 ω₀).
    """
    dz: float
    omega0: float
    gamma0: float
    eps_d: float
    eps_inf: float = 6.0
    omega_p: float = 9.0
    gamma_p: float = 0.1
    omega_max: Optional[float] = None

    kind = SpectralKind.PLASMONIC

    def __post_init__(self):
        is_valid, errors = self.validate()
        if not is_valid:
            raise ScenarioValidationError("\n".join(errors), key="spectral_density")

    def validate(self) -> Tuple[bool, List[str]]:
        errors = _check_finite(dz=self.dz, omega0=self.omega0, gamma0=self.gamma0,
                               eps_d=self.eps_d, eps_inf=self.eps_inf,
                               omega_p=self.omega_p, gamma_p=self.gamma_p)
        if errors:
            return False, errors
        if self.dz <= 0:
            errors.append("dz: distância emissor-interface deve ser positiva.")
        if self.omega0 <= 0:
            errors.append("omega0: frequência do emissor deve ser positiva.")
        if self.gamma0 < 0:
            errors.append("gamma0: taxa de decaimento no vácuo deve ser não-negativa.")
        if self.eps_d <= 0:
            errors.append("eps_d: permissividade do dielétrico deve ser positiva.")
        if self.gamma_p < 0:
            errors.append("gamma_p: amortecimento de Drude deve ser não-negativo.")
        if self.omega_max is not None and not (self.omega_max > 0):
            errors.append("omega_max: corte da banda deve ser positivo.")
        return len(errors) == 0, errors

    @property
    def band_top(self) -> float:
        return 3.0 * self.omega0 if self.omega_max is None else self.omega_max

    @property
    def scale(self) -> float:
        return self.omega0

    @property
    def resonance(self) -> float:
        """Frequência de plasmon de superfície sem perdas, ε_m = −ε_d."""
        return self.omega_p / math.sqrt(self.eps_inf + self.eps_d)

    def evaluate(self, omega: np.ndarray) -> np.ndarray:
        omega = np.atleast_1d(np.asarray(omega, dtype=float))
        out = np.array([_plasmonic_J(self, w) for w in omega.ravel()])
        return out.reshape(omega.shape)


@dataclass(frozen=True, eq=False)
class DiscreteModes:
    """Banho com modos discretos (g_k, ω_k)."""
    couplings: np.ndarray
    frequencies: np.ndarray

    kind = SpectralKind.DISCRETE

    def __post_init__(self):
        g = np.array(self.couplings, dtype=complex).ravel()
        w = np.array(self.frequencies, dtype=float).ravel()
        g.flags.writeable = False
        w.flags.writeable = False
        object.__setattr__(self, "couplings", g)
        object.__setattr__(self, "frequencies", w)
        is_valid, errors = self.validate()
        if not is_valid:
            raise ScenarioValidationError("\n".join(errors), key="spectral_density")

    def validate(self) -> Tuple[bool, List[str]]:
        errors = []
        if self.couplings.shape != self.frequencies.shape:
            errors.append("modes: número de acoplamentos difere do número de frequências.")
        elif self.frequencies.size == 0:
            errors.append("modes: lista de modos vazia.")
        else:
            if not (np.all(np.isfinite(self.frequencies)) and np.all(np.isfinite(self.couplings))):
                errors.append("modes: valores não finitos.")
            elif np.any(self.frequencies < 0):
                errors.append("modes: todas as frequências ω_k devem ser ≥ 0.")
        return len(errors) == 0, errors

    @property
    def weights(self) -> np.ndarray:
        return np.abs(self.couplings) ** 2

    @property
    def scale(self) -> float:
        return float(np.max(self.frequencies)) or 1.0

    @classmethod
    def from_pairs(cls, modes: Sequence[Tuple[float, float]]) -> "DiscreteModes":
        modes = list(modes)
        return cls(couplings=np.array([m[0] for m in modes]),
                   frequencies=np.array([m[1] for m in modes]))


SpectralDensity = Union[OhmicFamily, Plasmonic, DiscreteModes]


@dataclass(frozen=True)
class BoundState:
    """Autoenergia isolada E_b < 0 e resíduo Z ∈ (0, 1]."""
    energy: float
    residue: float
    omega0: float

    def to_dict(self) -> dict:
        return {"E_b": self.energy, "Z": self.residue, "omega0": self.omega0}


# =============================================================================
# QUADRATURAS
# =============================================================================

def _quad(func: Callable[[float], float], a: float, b: float, what: str,
          abs_scale: float = 1.0, **kwargs) -> float:
    """scipy.integrate.quad com critério de falha e registro de avisos."""
    epsabs = QUAD_EPSREL * abs_scale
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, abserr = integrate.quad(func, a, b, epsabs=epsabs, epsrel=QUAD_EPSREL,
                                       limit=QUAD_LIMIT, **kwargs)
    if not math.isfinite(value):
        raise QuadratureError(f"[QUAD] {what}: resultado não finito", abserr)
    if abserr > QUAD_FAILURE_RTOL * max(abs(value), abs_scale):
        raise QuadratureError(f"[QUAD] {what}: tolerância não atingida", abserr)
    if caught:
        logger.warning("[QUAD] %s: %s (erro estimado %.2e)", what, caught[0].message, abserr)
    return value


def _mapped_tail(func: Callable[[float], float], start: float, scale: float,
                 what: str, abs_scale: float) -> float:
    """∫_start^∞ func(ω) dω com ω = start + scale·x/(1−x), x ∈ [0, 1)."""
    def integrand(x: float) -> float:
        if x >= 1.0:
            return 0.0
        one_minus = 1.0 - x
        omega = start + scale * x / one_minus
        return func(omega) * scale / one_minus ** 2
    return _quad(integrand, 0.0, 1.0, what, abs_scale=abs_scale)


def magnitude(sd: SpectralDensity) -> float:
    """Escala de ∫J dω usada como tolerância absoluta."""
    if sd.kind is SpectralKind.OHMIC:
        value = sd.prefactor * special.gamma(sd.s + 1.0) * sd.omega_c ** (sd.s + 1.0)
    elif sd.kind is SpectralKind.PLASMONIC:
        value = sd.gamma0 * sd.omega0
    else:
        value = float(np.sum(sd.weights))
    return value if value > 0 else 1.0


def band_integral(sd: SpectralDensity, weight: Callable[[float], float], what: str,
                  points: Optional[Sequence[float]] = None) -> float:
    """∫ J(ω) w(ω) dω sobre a banda (soma finita para modos discretos)."""
    if sd.kind is SpectralKind.DISCRETE:
        return float(np.sum(sd.weights * np.array([weight(w) for w in sd.frequencies])))

    def integrand(w: float) -> float:
        return float(sd.evaluate(np.array([w]))[0]) * weight(w)

    if sd.kind is SpectralKind.PLASMONIC:
        top = sd.band_top
        pts = [p for p in (points or []) if 0 < p < top]
        if sd.resonance < top:
            pts.append(sd.resonance)
        return _quad(integrand, 0.0, top, what, abs_scale=magnitude(sd),
                     points=sorted(set(pts)) or None)
    return _mapped_tail(integrand, 0.0, sd.scale, what, magnitude(sd))


# =============================================================================
# OPERAÇÕES - J(ω), f(Δt), Δ(E)
# =============================================================================

def drude_permittivity(sd: Plasmonic, omega: complex) -> complex:
    """ε_m(ω) = ε_∞ − ω_p²/(ω(ω + iγ_p))."""
    return sd.eps_inf - sd.omega_p ** 2 / (omega * (omega + 1j * sd.gamma_p))


def _branch_sqrt(z):
    """Raiz quadrada complexa no ramo Im ≥ 0."""
    root = np.sqrt(np.asarray(z, dtype=complex))
    return np.where(root.imag < 0, -root, root)


def _fresnel_rp(sd: Plasmonic, omega: float, s: complex) -> complex:
    k0 = omega / HBAR_C_EV_NM
    eps_m = drude_permittivity(sd, omega)
    kzd = k0 * math.sqrt(sd.eps_d) * _branch_sqrt(1.0 - s * s)
    kzm = k0 * _branch_sqrt(eps_m - sd.eps_d * s * s)
    return complex((sd.eps_d * kzm - eps_m * kzd) / (sd.eps_d * kzm + eps_m * kzd))


def _plasmonic_J(sd: Plasmonic, omega: float) -> float:
    if omega <= 0 or omega > sd.band_top:
        return 0.0
    kd = omega * math.sqrt(sd.eps_d) / HBAR_C_EV_NM
    phase = 2.0 * kd * sd.dz

    # ondas propagantes: s = sen θ
    def propagating(theta: float) -> float:
        s = math.sin(theta)
        rp = _fresnel_rp(sd, omega, s)
        return (s ** 3 * (1.0 - rp * np.exp(1j * phase * math.cos(theta)))).real

    # ondas evanescentes: s = cosh u
    def evanescent(u: float) -> float:
        c = math.cosh(u)
        rp = _fresnel_rp(sd, omega, c)
        return -c ** 3 * math.exp(-phase * math.sinh(u)) * rp.imag

    u_max = math.asinh(60.0 / phase)
    points = None
    try:
        k_spp = spp_dispersion(sd, omega)
        s_pole = k_spp.real / kd
        if s_pole > 1.0 and math.acosh(s_pole) < u_max:
            points = [math.acosh(s_pole)]
    except SurfacePlasmonPole:
        pass

    total = _quad(propagating, 0.0, math.pi / 2, f"J plasmônico (propagante) em ω={omega!r}")
    total += _quad(evanescent, 0.0, u_max, f"J plasmônico (evanescente) em ω={omega!r}",
                   abs_scale=max(abs(total), 1.0), points=points)
    prefactor = 3.0 * sd.gamma0 * math.sqrt(sd.eps_d) * omega ** 3 / (4.0 * math.pi * sd.omega0 ** 3)
    return prefactor * total


def evaluate_J(sd: SpectralDensity, omega: ArrayLike) -> Union[float, np.ndarray]:
    """
    Avalia a densidade espectral J(ω) para ω ≥ 0.

    Args:
        sd: Densidade espectral
        omega: Frequência (escalar ou array)

    Returns:
        J(ω) no mesmo formato de omega. Para modos discretos retorna a
        densidade contínua nula fora das frequências dos modos e Σ|g_k|²
        nas coincidências exatas.
    """
    omega_arr = np.asarray(omega, dtype=float)
    if np.any(omega_arr < 0) or not np.all(np.isfinite(omega_arr)):
        raise ScenarioValidationError("evaluate_J: ω deve ser finito e ≥ 0.", key="omega")
    if sd.kind is SpectralKind.DISCRETE:
        values = np.array([np.sum(sd.weights[sd.frequencies == w]) for w in omega_arr.ravel()])
        values = values.reshape(omega_arr.shape)
    else:
        values = sd.evaluate(omega_arr)
    return float(values) if np.ndim(omega) == 0 else values


def kernel_f(sd: SpectralDensity, dt: ArrayLike, method: str = "auto") -> Union[complex, np.ndarray]:
    """
    Núcleo de memória f(Δt) = ∫₀^∞ J(ω) e^{-iωΔt} dω.

    Args:
        sd: Densidade espectral
        dt: Intervalo(s) de tempo
        method: "auto" (forma fechada quando existe), "closed" ou "quadrature"

    Returns:
        f(Δt) complexo, com f(−Δt) = f(Δt)*.
    """
    dt_arr = np.asarray(dt, dtype=float)
    if not np.all(np.isfinite(dt_arr)):
        raise KernelError("kernel_f: Δt não finito.")

    if sd.kind is SpectralKind.DISCRETE:
        values = np.exp(-1j * np.multiply.outer(dt_arr, sd.frequencies)) @ sd.weights
    elif sd.kind is SpectralKind.OHMIC and method in ("auto", "closed"):
        values = sd.kernel_closed_form(dt_arr)
    elif method == "closed":
        raise KernelError(f"kernel_f: sem forma fechada para {sd.kind.value}.")
    else:
        values = np.array([_kernel_quadrature(sd, float(x)) for x in dt_arr.ravel()],
                          dtype=complex).reshape(dt_arr.shape)
    return complex(values) if np.ndim(dt) == 0 else values


def _kernel_quadrature(sd: SpectralDensity, dt: float) -> complex:
    return fourier_band(sd, dt, label="f")


def fourier_band(sd: SpectralDensity, dt: float,
                 weight: Optional[Callable[[float], float]] = None,
                 breakpoints: Sequence[float] = (), label: str = "f",
                 abs_scale: Optional[float] = None) -> complex:
    """
    ∫ J(ω) w(ω) e^{-iωΔt} dω sobre a banda contínua.

    Segmentos finitos usam os pesos cos/sin da QUADPACK (QAWO); o segmento
    semi-infinito final usa a extrapolação por ciclos (QAWF). Os pontos de
    quebra isolam picos estreitos do integrando.
    """
    if sd.kind is SpectralKind.DISCRETE:
        w = np.ones_like(sd.frequencies) if weight is None else \
            np.array([weight(x) for x in sd.frequencies])
        return complex(np.sum(sd.weights * w * np.exp(-1j * sd.frequencies * dt)))

    def integrand(w: float) -> float:
        value = float(sd.evaluate(np.array([w]))[0])
        return value * weight(w) if weight is not None else value

    scale = magnitude(sd) if abs_scale is None else abs_scale
    top = sd.band_top if sd.kind is SpectralKind.PLASMONIC else np.inf
    edges = [0.0] + sorted(b for b in set(breakpoints) if 0.0 < b < top) + [top]

    if dt == 0.0:
        if np.isinf(top):
            total = sum(_quad(integrand, a, b, f"{label}(0)", abs_scale=scale)
                        for a, b in zip(edges[:-2], edges[1:-1]))
            return complex(total + _mapped_tail(integrand, edges[-2], sd.scale,
                                                f"{label}(0)", scale))
        return complex(sum(_quad(integrand, a, b, f"{label}(0)", abs_scale=scale)
                           for a, b in zip(edges[:-1], edges[1:])))

    sign = 1.0 if dt > 0 else -1.0
    wvar = abs(dt)
    re = im = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        re += _quad(integrand, a, b, f"Re {label}({dt!r})", abs_scale=scale,
                    weight="cos", wvar=wvar)
        im += _quad(integrand, a, b, f"Im {label}({dt!r})", abs_scale=scale,
                    weight="sin", wvar=wvar)
    return complex(re, -sign * im)


def level_shift(sd: SpectralDensity, energy: float) -> float:
    """
    Δ(E) = P∫₀^∞ J(ω)/(E − ω) dω.

    Para E ≤ 0 é uma integral ordinária. Para E dentro da banda o valor
    principal é calculado com o peso de Cauchy da QUADPACK (QAWC), que não
    avalia o integrando sobre a singularidade.
    """
    if not math.isfinite(energy):
        raise ScenarioValidationError("level_shift: E não finito.", key="E")

    if sd.kind is SpectralKind.DISCRETE:
        gaps = energy - sd.frequencies
        if np.any(np.abs(gaps) < 1e-300):
            raise KernelError(f"level_shift: E = {energy!r} coincide com um modo discreto.")
        return float(np.sum(sd.weights / gaps))

    if sd.kind is SpectralKind.OHMIC and sd.eta == 0.0:
        return 0.0

    scale = magnitude(sd) / sd.scale
    if energy <= 0.0:
        return -band_integral(sd, lambda w: 1.0 / (w - energy), f"Δ({energy!r})")

    def J(w: float) -> float:
        return float(sd.evaluate(np.array([w]))[0])

    if sd.kind is SpectralKind.PLASMONIC:
        top = sd.band_top
        if energy >= top:
            return -band_integral(sd, lambda w: 1.0 / (w - energy), f"Δ({energy!r})")
        principal = _quad(J, 0.0, top, f"VP Δ({energy!r})", abs_scale=scale,
                          weight="cauchy", wvar=energy)
        return -principal

    split = energy + max(energy, sd.scale)
    principal = _quad(J, 0.0, split, f"VP Δ({energy!r})", abs_scale=scale,
                      weight="cauchy", wvar=energy)
    tail = _mapped_tail(lambda w: J(w) / (w - energy), split, sd.scale,
                        f"cauda Δ({energy!r})", scale)
    return -(principal + tail)


# =============================================================================
# ESTADO LIGADO
# =============================================================================

def bound_condition(sd: SpectralDensity, omega0: float, energy: float) -> float:
    """y(E) = ω₀ − ∫ J(ω)/(ω − E) dω para E ≤ 0."""
    return omega0 + level_shift(sd, energy)


def bound_state_solve(sd: SpectralDensity, omega0: float,
                      max_doublings: int = 60) -> Optional[BoundState]:
    """
    Resolve y(E) = E em E < 0.

    Existe raiz se e somente se y(0) < 0. Como y é decrescente em E < 0,
    a raiz está em [y(0), 0]; o extremo inferior é dobrado enquanto a
    quadratura não confirmar a troca de sinal.

    Returns:
        BoundState ou None se não há estado ligado.
    """
    if not (math.isfinite(omega0) and omega0 > 0):
        raise ScenarioValidationError("bound_state_solve: ω₀ deve ser positivo.", key="omega0")
    if sd.kind is SpectralKind.DISCRETE and np.any(sd.frequencies <= 0):
        raise ScenarioValidationError(
            "bound_state_solve: banda deve estar em (0, ∞) para modos discretos.", key="modes")

    y0 = bound_condition(sd, omega0, 0.0)
    if y0 >= 0.0:
        logger.debug("[BOUND] y(0) = %.6g ≥ 0: sem estado ligado", y0)
        return None

    def residual(energy: float) -> float:
        return bound_condition(sd, omega0, energy) - energy

    lower = y0
    for _ in range(max_doublings):
        if residual(lower) > 0.0:
            break
        lower *= 2.0
    else:
        raise RootBracketError(
            f"[BOUND] Troca de sinal não encontrada em [{lower!r}, 0] com y(0) = {y0!r}; "
            "quadratura inconsistente.")

    energy = optimize.brentq(residual, lower, 0.0, xtol=1e-12 * omega0, maxiter=200)
    curvature = band_integral(sd, lambda w: 1.0 / (energy - w) ** 2, f"Z(E_b={energy!r})")
    residue = 1.0 / (1.0 + curvature)
    logger.info("[BOUND] E_b = %.10g, Z = %.8f (ω₀ = %g)", energy, residue, omega0)
    return BoundState(energy=float(energy), residue=float(residue), omega0=omega0)


# =============================================================================
# PLASMON DE SUPERFÍCIE
# =============================================================================

def spp_dispersion(sd: Plasmonic, omega: float) -> complex:
    """
    k_SPP = (ω/c) sqrt(ε_m ε_d/(ε_m + ε_d)) em nm⁻¹, ramo Im k ≥ 0.

    Raises:
        SurfacePlasmonPole: quando ε_m(ω) + ε_d = 0.
    """
    if not (math.isfinite(omega) and omega > 0):
        raise ScenarioValidationError("spp_dispersion: ω deve ser positivo.", key="omega")
    eps_m = drude_permittivity(sd, omega)
    denominator = eps_m + sd.eps_d
    if abs(denominator) < 1e-12 * sd.eps_d:
        raise SurfacePlasmonPole(omega)
    ratio = eps_m * sd.eps_d / denominator
    return complex(omega / HBAR_C_EV_NM * _branch_sqrt(ratio))


# =============================================================================
# DISCRETIZAÇÃO
# =============================================================================

def discretize(sd: SpectralDensity, n_modes: int, omega_max: float) -> DiscreteModes:
    """
    Discretiza J(ω) em n_modes modos no ponto médio de [0, omega_max]:
    ω_k = (k + ½)Δω, g_k = sqrt(J(ω_k)Δω).
    """
    if sd.kind is SpectralKind.DISCRETE:
        return sd
    if n_modes < 1 or not omega_max > 0:
        raise ScenarioValidationError("discretize: n_modes ≥ 1 e omega_max > 0.", key="n_modes")
    d_omega = omega_max / n_modes
    frequencies = (np.arange(n_modes) + 0.5) * d_omega
    couplings = np.sqrt(sd.evaluate(frequencies) * d_omega)
    return DiscreteModes(couplings=couplings, frequencies=frequencies)
