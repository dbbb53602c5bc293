"""
PyBound - Módulo de Topologia Floquet
Decomposição de Floquet para modelos de duas bandas acionados por partes,
fechamentos de gap, número de Chern (Haldane), números de enrolamento
(Kitaev e SSH não-hermitiano na zona de Brillouin generalizada) e espectros
com contorno aberto.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg, optimize

from .errors import GaplessError, ScenarioValidationError

logger = logging.getLogger(__name__)

WINDING_POINTS = 4096
# incremento de fase acima disso indica contorno quase sem gap
WINDING_STEP_LIMIT = 0.9 * math.pi
GAP_TOL = 1e-9
EDGE_TOL_FRACTION = 1e-3
EDGE_WEIGHT = 0.6
EDGE_REGION = 0.1
CLOSING_THRESHOLD = 1e-3
CONDITION_TOL = 1e-4

SIGMA = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)

A1 = np.array([math.sqrt(3) / 2, 1.5])
A2 = np.array([-math.sqrt(3) / 2, 1.5])


# =============================================================================
# MODELOS
# =============================================================================

class ModelKind(Enum):
    """Variante do modelo de duas bandas."""
    KITAEV = "kitaev"
    HALDANE = "haldane"
    NHSSH = "nhssh"


@dataclass(frozen=True)
class KitaevParams:
    """
    Cadeia de Kitaev com saltos e emparelhamentos até segundos vizinhos.

    Δ_a = |Δ_a| e^{iφ_a}; a segunda metade do período troca φ₁ ↔ φ₂.
    """
    mu: float = -10.0
    t1: float = 1.0
    t2: float = 1.5
    delta1: float = 1.0
    delta2: float = 2.5
    phi1: float = 0.0
    phi2: float = math.pi / 2

    def phases(self, piece: int) -> Tuple[float, float]:
        return (self.phi1, self.phi2) if piece == 0 else (self.phi2, self.phi1)

    def bloch(self, k: np.ndarray, piece: int) -> np.ndarray:
        """h(k) = (Re D, −Im D, ξ), ξ = −μ − 2t₁cos k − 2t₂cos 2k."""
        k = np.asarray(k, dtype=float)
        p1, p2 = self.phases(piece)
        xi = -self.mu - 2.0 * self.t1 * np.cos(k) - 2.0 * self.t2 * np.cos(2.0 * k)
        pairing = -2j * (self.delta1 * np.exp(1j * p1) * np.sin(k)
                         + self.delta2 * np.exp(1j * p2) * np.sin(2.0 * k))
        return np.stack([pairing.real, -pairing.imag, xi], axis=-1)

    def chiral_axis(self) -> np.ndarray:
        """n̂ no plano xy, paralelo a h₁ − h₂; Γ = n̂·σ satisfaz ΓH₁Γ = −H₂."""
        c = -1j * (np.exp(1j * self.phi1) - np.exp(1j * self.phi2))
        if abs(c) < 1e-12:
            c = np.exp(1j * self.phi1)
        axis = np.array([c.real, -c.imag, 0.0])
        return axis / np.linalg.norm(axis)

    def bdg_open(self, n_sites: int, piece: int) -> np.ndarray:
        """Hamiltoniano BdG em espaço real, base (c₁..c_N, c₁†..c_N†)."""
        p1, p2 = self.phases(piece)
        hopping = np.zeros((n_sites, n_sites))
        pairing = np.zeros((n_sites, n_sites), dtype=complex)
        np.fill_diagonal(hopping, -self.mu)
        for distance, t, delta, phase in ((1, self.t1, self.delta1, p1),
                                          (2, self.t2, self.delta2, p2)):
            idx = np.arange(n_sites - distance)
            hopping[idx, idx + distance] = hopping[idx + distance, idx] = -t
            amplitude = delta * np.exp(1j * phase)
            pairing[idx, idx + distance] = -amplitude
            pairing[idx + distance, idx] = amplitude
        return np.block([[hopping, pairing], [pairing.conj().T, -hopping]])


@dataclass(frozen=True)
class HaldanePiece:
    """Parâmetros alternados por peça: t₃ e a fase φ de t₂."""
    t3: float
    phi: float


@dataclass(frozen=True)
class HaldaneParams:
    """Modelo de Haldane com terceiros vizinhos; vetores a₁, a₂ da rede hexagonal."""
    t1: float = 1.0
    t2: float = 0.8
    M: float = 0.0
    piece1: HaldanePiece = HaldanePiece(0.75, -math.pi / 6)
    piece2: HaldanePiece = HaldanePiece(-0.75, -math.pi / 2)

    def piece(self, index: int) -> HaldanePiece:
        return self.piece1 if index == 0 else self.piece2

    def bloch(self, theta: np.ndarray, piece: int) -> np.ndarray:
        """h(θ₁, θ₂) com θ_j = k·a_j; theta tem forma (..., 2)."""
        p = self.piece(piece)
        th1, th2 = theta[..., 0], theta[..., 1]
        hx = (self.t1 * (1.0 + np.cos(th1) + np.cos(th2))
              + p.t3 * (2.0 * np.cos(th1 - th2) + np.cos(th1 + th2)))
        hy = self.t1 * (np.sin(th1) + np.sin(th2)) + p.t3 * np.sin(th1 + th2)
        hz = 2.0 * self.t2 * math.sin(p.phi) * (np.sin(th1) - np.sin(th2) - np.sin(th1 - th2)) + self.M
        return np.stack([hx, hy, hz], axis=-1)

    def fourier_components(self, piece: int) -> Dict[Tuple[int, int], np.ndarray]:
        """H_R com H(k) = Σ_R H_R e^{−ik·R}, R = m₁a₁ + m₂a₂."""
        p = self.piece(piece)
        off: Dict[Tuple[int, int], complex] = {
            (0, 0): self.t1, (1, 0): self.t1, (0, 1): self.t1,
            (1, -1): p.t3, (-1, 1): p.t3, (1, 1): p.t3,
        }
        mass = 2.0 * self.t2 * math.sin(p.phi)
        diag: Dict[Tuple[int, int], complex] = {
            (0, 0): self.M,
            (1, 0): 0.5j * mass, (-1, 0): -0.5j * mass,
            (0, 1): -0.5j * mass, (0, -1): 0.5j * mass,
            (1, -1): -0.5j * mass, (-1, 1): 0.5j * mass,
        }
        components: Dict[Tuple[int, int], np.ndarray] = {}
        for R in set(off) | set(diag) | {(-m1, -m2) for m1, m2 in off}:
            block = np.zeros((2, 2), dtype=complex)
            block[0, 0] = diag.get(R, 0.0)
            block[1, 1] = -diag.get(R, 0.0)
            block[0, 1] = off.get(R, 0.0)
            block[1, 0] = np.conj(off.get((-R[0], -R[1]), 0.0))
            components[R] = block
        return components


@dataclass(frozen=True)
class NHSSHParams:
    """
    SSH não-hermitiano com t₂(t) = f na primeira peça e q·f na segunda.

    R±(β) = t₁ ± γ/2 + β^{∓1} t₂.
    """
    t1: float = 2.0
    gamma: float = 1.0
    f: float = 1.0
    q: float = 3.0

    def t2(self, piece: int) -> float:
        return self.f if piece == 0 else self.q * self.f

    def r_pm(self, beta: np.ndarray, piece: int) -> Tuple[np.ndarray, np.ndarray]:
        t2 = self.t2(piece)
        r_plus = self.t1 + 0.5 * self.gamma + t2 / beta
        r_minus = self.t1 - 0.5 * self.gamma + t2 * beta
        return r_plus, r_minus

    def bloch(self, beta: np.ndarray, piece: int) -> np.ndarray:
        """Vetor complexo (h_x, h_y, 0) de R₊σ₊ + R₋σ₋."""
        r_plus, r_minus = self.r_pm(beta, piece)
        zeros = np.zeros_like(r_plus)
        return np.stack([0.5 * (r_plus + r_minus), 0.5j * (r_plus - r_minus), zeros], axis=-1)

    def real_space(self, n_cells: int, piece: int) -> np.ndarray:
        """Base [a₁, b₁, a₂, b₂, ...] com contorno aberto."""
        t2 = self.t2(piece)
        dim = 2 * n_cells
        hamiltonian = np.zeros((dim, dim), dtype=complex)
        a = np.arange(n_cells) * 2
        hamiltonian[a, a + 1] = self.t1 + 0.5 * self.gamma
        hamiltonian[a + 1, a] = self.t1 - 0.5 * self.gamma
        hamiltonian[a[1:], a[1:] - 1] = t2
        hamiltonian[a[1:] - 1, a[1:]] = t2
        return hamiltonian


@dataclass(frozen=True)
class DrivenTwoBandModel:
    """Par de mapas de Bloch com durações (T₁, T₂)."""
    kind: ModelKind
    params: object
    T1: float
    T2: float

    def __post_init__(self):
        if not (self.T1 > 0 and self.T2 >= 0 and math.isfinite(self.T1 + self.T2)):
            raise ScenarioValidationError("Durações devem satisfazer T₁ > 0, T₂ ≥ 0.", key="T1")

    @property
    def period(self) -> float:
        return self.T1 + self.T2

    @property
    def k_dim(self) -> int:
        return 2 if self.kind is ModelKind.HALDANE else 1

    def bloch_pair(self, k: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return self.params.bloch(k, 0), self.params.bloch(k, 1)


def kitaev_model(params: KitaevParams, T: float) -> DrivenTwoBandModel:
    """Troca de fases a cada meio período: T₁ = T₂ = T/2."""
    return DrivenTwoBandModel(ModelKind.KITAEV, params, 0.5 * T, 0.5 * T)


# =============================================================================
# DECOMPOSIÇÃO DE DUAS BANDAS
# =============================================================================

@dataclass
class TwoBandFloquet:
    """U_T = ε I + i r·σ e h_eff = −arccos(ε) r̂/T."""
    epsilon: np.ndarray
    r: np.ndarray
    h_eff: np.ndarray
    gapless: np.ndarray

    @property
    def phase(self) -> np.ndarray:
        """T|h_eff| = arccos ε ∈ [0, π]."""
        return np.arccos(np.clip(self.epsilon, -1.0, 1.0))


def _rotation_vector(h: np.ndarray, duration: float) -> Tuple[np.ndarray, np.ndarray]:
    """(cos a, ĥ sin a) com a = duração·|h|, estável em |h| → 0."""
    norm = np.linalg.norm(h, axis=-1)
    angle = duration * norm
    return np.cos(angle), (duration * np.sinc(angle / np.pi))[..., None] * h


def two_band_floquet(h1: np.ndarray, h2: np.ndarray, T1: float, T2: float) -> TwoBandFloquet:
    """
    Forma fechada de U_T = e^{−iH₂T₂} e^{−iH₁T₁} para H_j = h_j·σ.

    ε = c₁c₂ − ĥ₁·ĥ₂ s₁s₂, r = ĥ₁×ĥ₂ s₁s₂ − ĥ₂c₁s₂ − ĥ₁c₂s₁.
    """
    h1 = np.asarray(h1, dtype=float)
    h2 = np.asarray(h2, dtype=float)
    c1, v1 = _rotation_vector(h1, T1)
    c2, v2 = _rotation_vector(h2, T2)
    epsilon = c1 * c2 - np.sum(v1 * v2, axis=-1)
    r = np.cross(v1, v2) - c1[..., None] * v2 - c2[..., None] * v1
    norm_r = np.linalg.norm(r, axis=-1)
    gapless = norm_r < GAP_TOL
    phase = np.arccos(np.clip(epsilon, -1.0, 1.0))
    direction = r / np.where(gapless, 1.0, norm_r)[..., None]
    h_eff = -(phase / (T1 + T2))[..., None] * direction
    h_eff[gapless] = 0.0
    return TwoBandFloquet(epsilon=epsilon, r=r, h_eff=h_eff, gapless=gapless)


def floquet_of(model: DrivenTwoBandModel, k: np.ndarray) -> TwoBandFloquet:
    h1, h2 = model.bloch_pair(k)
    return two_band_floquet(h1, h2, model.T1, model.T2)


def _k_grid(model: DrivenTwoBandModel, n_k: int) -> np.ndarray:
    axis = 2.0 * np.pi * np.arange(n_k) / n_k
    if model.k_dim == 1:
        return axis
    t1, t2 = np.meshgrid(axis, axis, indexing="ij")
    return np.stack([t1, t2], axis=-1)


def gap_profile(model: DrivenTwoBandModel, k: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Gaps de fase em zero (arccos ε) e em π (π − arccos ε)."""
    phase = floquet_of(model, k).phase
    return phase, np.pi - phase


# =============================================================================
# FECHAMENTOS DE GAP
# =============================================================================

@dataclass
class GapClosing:
    """Fechamento de gap localizado e sua condição analítica."""
    k: Tuple[float, ...]
    gap: float
    quasienergy: str
    condition: str
    n: Optional[int]


def classify_closing(model: DrivenTwoBandModel, k: np.ndarray,
                     tol: float = CONDITION_TOL) -> Tuple[str, Optional[int]]:
    """
    Identifica a condição satisfeita em k.

    piece_resonance: T_j|h_j| = n_jπ para as duas peças (n = n₁ + n₂).
    collinear: ĥ₁·ĥ₂ = ±1 e T₁|h₁| ± T₂|h₂| = nπ.
    """
    h1, h2 = model.bloch_pair(np.asarray(k))
    a1 = model.T1 * np.linalg.norm(h1)
    a2 = model.T2 * np.linalg.norm(h2)
    n1, n2 = round(a1 / np.pi), round(a2 / np.pi)
    if abs(a1 / np.pi - n1) < tol and abs(a2 / np.pi - n2) < tol:
        return "piece_resonance", int(n1 + n2)
    norms = np.linalg.norm(h1) * np.linalg.norm(h2)
    if norms > 0:
        alignment = float(np.dot(h1, h2) / norms)
        if abs(abs(alignment) - 1.0) < tol:
            total = (a1 + math.copysign(1.0, alignment) * a2) / np.pi
            if abs(total - round(total)) < tol:
                return "collinear", int(round(total))
    return "anomaly", None


def gap_closing_locus(model: DrivenTwoBandModel, n_k: int = 120,
                      threshold: float = CLOSING_THRESHOLD,
                      coarse: float = 0.1) -> List[GapClosing]:
    """
    Varre o gap em k, refina mínimos locais com Nelder-Mead e classifica
    cada fechamento (quasienergia zero para n par, π/T para n ímpar).
    """
    grid = _k_grid(model, n_k)
    gap0, gap_pi = gap_profile(model, grid)
    gap = np.minimum(gap0, gap_pi)
    neighbours = [np.roll(gap, shift, axis=axis)
                  for axis in range(model.k_dim) for shift in (1, -1)]
    minima = np.all([gap <= other for other in neighbours], axis=0) & (gap < coarse)

    def objective(x: np.ndarray) -> float:
        point = x if model.k_dim == 2 else x[0]
        g0, gp = gap_profile(model, np.asarray(point))
        return float(min(g0, gp))

    closings: List[GapClosing] = []
    for index in zip(*np.nonzero(minima)):
        start = np.atleast_1d(grid[index])
        result = optimize.minimize(objective, start, method="Nelder-Mead",
                                   options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000})
        point = result.x if result.fun < objective(start) else start
        value = objective(point)
        if value >= threshold:
            continue
        point = np.mod(point, 2.0 * np.pi)
        g0, _ = gap_profile(model, np.asarray(point if model.k_dim == 2 else point[0]))
        where = "zero" if float(g0) <= np.pi / 2 else "pi"
        condition, n = classify_closing(model, point if model.k_dim == 2 else point[0])
        if condition == "anomaly":
            logger.warning("[TOPO] fechamento em k=%s sem condição analítica", np.round(point, 6))
        elif (n % 2 == 0) != (where == "zero"):
            logger.warning("[TOPO] paridade de n=%d incompatível com gap em %s", n, where)
        if any(np.allclose(point, c.k, atol=1e-6) for c in closings):
            continue
        closings.append(GapClosing(k=tuple(float(x) for x in point), gap=value,
                                   quasienergy=where, condition=condition, n=n))
    return closings


def find_gap_closings(model: DrivenTwoBandModel, T1_values: Sequence[float],
                      T2_values: Sequence[float], n_k: int = 120,
                      threshold: float = CLOSING_THRESHOLD
                      ) -> List[Tuple[float, float, GapClosing]]:
    """Fechamentos de gap ao longo de uma malha (T₁, T₂) com os mesmos parâmetros."""
    found = []
    for T1 in T1_values:
        for T2 in T2_values:
            scan = DrivenTwoBandModel(model.kind, model.params, float(T1), float(T2))
            for closing in gap_closing_locus(scan, n_k=n_k, threshold=threshold):
                found.append((float(T1), float(T2), closing))
    logger.info("[TOPO] %d fechamentos em %d pontos (T₁, T₂)", len(found),
                len(T1_values) * len(T2_values))
    return found


def minimal_gap(model: DrivenTwoBandModel, n_k: int = 120) -> float:
    """Menor gap de fase (zero ou π) na malha de k."""
    gap0, gap_pi = gap_profile(model, _k_grid(model, n_k))
    return float(np.min(np.minimum(gap0, gap_pi)))


# =============================================================================
# NÚMERO DE CHERN
# =============================================================================

def chern_number(model: DrivenTwoBandModel, n_grid: int = 60) -> int:
    """
    Chern da banda inferior de H_eff por fluxo de Berry em plaquetas.

    C = (1/2π)∫ rot(i⟨u|∇u⟩), que é menos a soma dos ângulos das plaquetas
    na orientação (θ₁, θ₂).
    """
    if model.kind is not ModelKind.HALDANE:
        raise ScenarioValidationError("chern_number requer um modelo 2D.", key="model")
    floquet = floquet_of(model, _k_grid(model, n_grid))
    phase = floquet.phase
    gap = np.minimum(phase, np.pi - phase)
    worst = np.unravel_index(int(np.argmin(gap)), gap.shape)
    if gap[worst] < GAP_TOL or np.any(floquet.gapless):
        raise GaplessError("[TOPO] H_eff sem gap na malha", gap=float(gap[worst]),
                           where=tuple(2.0 * np.pi * np.array(worst) / n_grid))

    matrices = np.einsum("...i,ijk->...jk", floquet.h_eff, SIGMA)
    _, vectors = np.linalg.eigh(matrices)
    lower = vectors[..., :, 0]
    link1 = np.sum(lower.conj() * np.roll(lower, -1, axis=0), axis=-1)
    link2 = np.sum(lower.conj() * np.roll(lower, -1, axis=1), axis=-1)
    link1 /= np.abs(link1)
    link2 /= np.abs(link2)
    plaquette = np.angle(link1 * np.roll(link2, -1, axis=0)
                         * np.conj(np.roll(link1, -1, axis=1)) * np.conj(link2))
    total = -float(np.sum(plaquette)) / (2.0 * np.pi)
    chern = int(round(total))
    if abs(total - chern) > 1e-6:
        raise GaplessError(f"[TOPO] fluxo de Berry não inteiro: {total:.6f}",
                           gap=float(gap[worst]))
    logger.info("[TOPO] Chern = %d (malha %d², gap mínimo %.3g)", chern, n_grid, gap[worst])
    return chern


# =============================================================================
# FAIXA ZIGUEZAGUE (HALDANE)
# =============================================================================

@dataclass
class EdgeFlow:
    """Fluxo espectral com sinal dos modos da borda superior nos gaps 0 e π/T."""
    zero: int
    pi: int

    @property
    def chern_difference(self) -> int:
        return self.zero - self.pi


def haldane_ribbon(params: HaldaneParams, piece: int, kappa: float, n_cells: int) -> np.ndarray:
    """
    Faixa periódica ao longo de e₁ = a₁ − a₂ e finita ao longo de e₂ = a₂.

    R = m₁a₁ + m₂a₂ corresponde a (p, q) = (m₁, m₁ + m₂) na base (e₁, e₂).
    """
    dim = 2 * n_cells
    hamiltonian = np.zeros((dim, dim), dtype=complex)
    for (m1, m2), block in params.fourier_components(piece).items():
        p, dq = m1, m1 + m2
        phase = np.exp(-1j * kappa * p)
        for q in range(max(0, -dq), min(n_cells, n_cells - dq)):
            target = q + dq
            hamiltonian[2 * target:2 * target + 2, 2 * q:2 * q + 2] += block * phase
    return hamiltonian


def _hermitian_step(hamiltonian: np.ndarray, duration: float) -> np.ndarray:
    energies, vectors = linalg.eigh(hamiltonian)
    return (vectors * np.exp(-1j * energies * duration)) @ vectors.conj().T


def _fold(epsilon, period: float):
    half = np.pi / period
    return half - np.mod(half - np.asarray(epsilon, dtype=float), 2.0 * half)


def haldane_ribbon_edge_flow(model: DrivenTwoBandModel, n_cells: int = 40,
                             n_kappa: int = 240) -> EdgeFlow:
    """
    Conta cruzamentos com sinal dos ramos da borda superior pelos gaps em
    zero e π/T, seguindo cada ramo por máxima sobreposição entre κ vizinhos.
    """
    period = model.period
    edge_cells = max(1, int(round(EDGE_REGION * n_cells)))
    top = slice(2 * (n_cells - edge_cells), 2 * n_cells)
    bottom = slice(0, 2 * edge_cells)
    kappas = np.linspace(0.0, 2.0 * np.pi, n_kappa + 1)

    def snapshot(kappa: float):
        u1 = _hermitian_step(haldane_ribbon(model.params, 0, kappa, n_cells), model.T1)
        u2 = _hermitian_step(haldane_ribbon(model.params, 1, kappa, n_cells), model.T2)
        triangular, vectors = linalg.schur(u2 @ u1, output="complex")
        eps = _fold(-np.angle(np.diag(triangular)) / period, period)
        weights = np.abs(vectors) ** 2
        side = weights[top].sum(axis=0) - weights[bottom].sum(axis=0)
        return eps, vectors, side

    flows = {"zero": 0, "pi": 0}
    eps_old, vec_old, side_old = snapshot(kappas[0])
    for kappa in kappas[1:]:
        eps_new, vec_new, side_new = snapshot(kappa)
        overlap = np.abs(vec_old.conj().T @ vec_new) ** 2
        rows, cols = optimize.linear_sum_assignment(-overlap)
        for i, j in zip(rows, cols):
            if side_old[i] + side_new[j] <= 0:
                continue
            for label, target in (("zero", 0.0), ("pi", np.pi / period)):
                before = _fold(eps_old[i] - target, period)
                after = _fold(eps_new[j] - target, period)
                if abs(after - before) > np.pi / (2.0 * period):
                    continue
                if before < 0.0 <= after:
                    flows[label] += 1
                elif after < 0.0 <= before:
                    flows[label] -= 1
        eps_old, vec_old, side_old = eps_new, vec_new, side_new
    logger.info("[TOPO] fluxo de borda: zero=%d, π=%d", flows["zero"], flows["pi"])
    return EdgeFlow(zero=flows["zero"], pi=flows["pi"])


# =============================================================================
# ENROLAMENTOS
# =============================================================================

def winding_of(values: np.ndarray, label: str = "curva") -> float:
    """
    Enrolamento de uma curva complexa fechada (último ponto ≠ primeiro),
    somando incrementos de fase; recusa incrementos próximos de π.
    """
    values = np.asarray(values, dtype=complex)
    scale = float(np.max(np.abs(values))) or 1.0
    smallest = float(np.min(np.abs(values)))
    if smallest < GAP_TOL * scale:
        raise GaplessError(f"[TOPO] {label} passa pela origem", gap=smallest)
    steps = np.angle(np.roll(values, -1) / values)
    if np.max(np.abs(steps)) > WINDING_STEP_LIMIT:
        raise GaplessError(f"[TOPO] {label}: incremento de fase próximo de π", gap=smallest)
    return float(np.sum(steps) / (2.0 * np.pi))


@dataclass
class FloquetWinding:
    """Enrolamentos nos dois referenciais simétricos e contagem de modos de borda."""
    W1: float
    W2: float
    n_zero: float
    n_pi: float
    bz_W1: Optional[float] = None
    bz_W2: Optional[float] = None


def _counts(W1: float, W2: float) -> Tuple[float, float]:
    return abs(W1 + W2) / 2.0, abs(W1 - W2) / 2.0


def kitaev_invariants(model: DrivenTwoBandModel,
                      n_points: int = WINDING_POINTS) -> FloquetWinding:
    """
    Enrolamentos de h_eff nos referenciais U_a = e^{−iH₂T/2}e^{−iH₁T/2} e
    U_b = e^{−iH₁T/2}e^{−iH₂T/2}, projetado no plano ortogonal ao eixo quiral.
    """
    params: KitaevParams = model.params
    k = 2.0 * np.pi * np.arange(n_points) / n_points
    h1, h2 = model.bloch_pair(k)
    axis = params.chiral_axis()
    ortho = np.cross(axis, [0.0, 0.0, 1.0])
    windings = []
    for first, second in ((h1, h2), (h2, h1)):
        frame = two_band_floquet(first, second, model.T1, model.T2)
        phase = frame.phase
        gap = float(np.min(np.minimum(phase, np.pi - phase)))
        if gap < GAP_TOL or np.any(frame.gapless):
            raise GaplessError("[TOPO] Kitaev sem gap", gap=gap)
        leak = np.max(np.abs(frame.h_eff @ axis)) / np.max(np.linalg.norm(frame.h_eff, axis=-1))
        if leak > 1e-8:
            logger.warning("[TOPO] h_eff fora do plano quiral (%.2e)", leak)
        curve = frame.h_eff[:, 2] + 1j * (frame.h_eff @ ortho)
        windings.append(round(winding_of(curve, "h_eff de Kitaev")))
    n_zero, n_pi = _counts(*windings)
    return FloquetWinding(W1=windings[0], W2=windings[1], n_zero=n_zero, n_pi=n_pi)


def gbz_map(k, t1: float, gamma: float):
    """β = sqrt(|(t₁ − γ/2)/(t₁ + γ/2)|) e^{ik}."""
    minus, plus = t1 - 0.5 * gamma, t1 + 0.5 * gamma
    if abs(minus) < 1e-14 or abs(plus) < 1e-14:
        raise ScenarioValidationError("|t₁| = γ/2: raio da GBZ degenerado.", key="t1")
    return math.sqrt(abs(minus / plus)) * np.exp(1j * np.asarray(k, dtype=float))


def _pauli_product(a0, a, b0, b):
    """(a₀ + a·σ)(b₀ + b·σ) = a₀b₀ + a·b + (a₀b + b₀a + i a×b)·σ."""
    scalar = a0 * b0 + np.sum(a * b, axis=-1)
    vector = a0[..., None] * b + b0[..., None] * a + 1j * np.cross(a, b)
    return scalar, vector


def _pauli_exponential(h: np.ndarray, duration: float):
    """exp(−iτ h·σ) para h complexo: cos(Eτ) − iτ sinc(Eτ) h·σ, E² = h·h."""
    energy = np.sqrt(np.sum(h * h, axis=-1) + 0j)
    angle = energy * duration
    return np.cos(angle), (-1j * duration * np.sinc(angle / np.pi))[..., None] * h


def _effective_r_pm(h1: np.ndarray, h2: np.ndarray, T1: float, T2: float, label: str):
    """R±_eff do referencial simétrico e^{−iH₁T₁/2} e^{−iH₂T₂} e^{−iH₁T₁/2}."""
    half0, half = _pauli_exponential(h1, 0.5 * T1)
    full0, full = _pauli_exponential(h2, T2)
    s0, s = _pauli_product(half0, half, full0, full)
    u0, u = _pauli_product(s0, s, half0, half)
    theta = np.arccos(u0)
    sin_theta = np.sin(theta)
    if np.min(np.abs(sin_theta)) < 1e-10:
        raise GaplessError(f"[TOPO] {label}: quasienergia em 0 ou π/T",
                           gap=float(np.min(np.abs(sin_theta))))
    h_eff = (1j * theta / ((T1 + T2) * sin_theta))[..., None] * u
    leak = np.max(np.abs(h_eff[..., 2])) / np.max(np.abs(h_eff))
    if leak > 1e-8:
        logger.warning("[TOPO] %s: simetria quiral violada (%.2e)", label, leak)
    return h_eff[..., 0] - 1j * h_eff[..., 1], h_eff[..., 0] + 1j * h_eff[..., 1]


def nhssh_static_winding(params: NHSSHParams, piece: int = 0,
                         n_points: int = WINDING_POINTS, generalized: bool = True) -> float:
    """W = −(W₊ − W₋)/2 do modelo estático com t₂ da peça indicada."""
    k = 2.0 * np.pi * np.arange(n_points) / n_points
    beta = gbz_map(k, params.t1, params.gamma) if generalized else np.exp(1j * k)
    r_plus, r_minus = params.r_pm(beta, piece)
    return -(winding_of(r_plus, "R+") - winding_of(r_minus, "R-")) / 2.0


def nhssh_invariants(model: DrivenTwoBandModel, n_points: int = WINDING_POINTS,
                     conventional: bool = True) -> FloquetWinding:
    """
    Enrolamentos 𝒲₁, 𝒲₂ dos Hamiltonianos efetivos dos referenciais
    simétricos sobre a GBZ; N₀ = |𝒲₁+𝒲₂|/2, N_π = |𝒲₁−𝒲₂|/2.
    """
    params: NHSSHParams = model.params
    k = 2.0 * np.pi * np.arange(n_points) / n_points

    def windings(beta: np.ndarray, label: str) -> Tuple[float, float]:
        h1 = params.bloch(beta, 0)
        h2 = params.bloch(beta, 1)
        out = []
        for first, second, t_first, t_second, tag in ((h1, h2, model.T1, model.T2, "Ũ1"),
                                                      (h2, h1, model.T2, model.T1, "Ũ2")):
            r_plus, r_minus = _effective_r_pm(first, second, t_first, t_second, f"{label} {tag}")
            out.append(-(winding_of(r_plus, "R+") - winding_of(r_minus, "R-")) / 2.0)
        return out[0], out[1]

    W1, W2 = windings(gbz_map(k, params.t1, params.gamma), "GBZ")
    bz_W1 = bz_W2 = None
    if conventional:
        try:
            bz_W1, bz_W2 = windings(np.exp(1j * k), "BZ")
        except GaplessError as exc:
            logger.info("[TOPO] enrolamento na BZ convencional indefinido: %s", exc)
    W1, W2 = round(W1 * 2) / 2, round(W2 * 2) / 2
    n_zero, n_pi = _counts(W1, W2)
    return FloquetWinding(W1=W1, W2=W2, n_zero=n_zero, n_pi=n_pi, bz_W1=bz_W1, bz_W2=bz_W2)


# =============================================================================
# ESPECTROS COM CONTORNO ABERTO
# =============================================================================

@dataclass
class OpenSpectrum:
    """Quasienergias (complexas no caso não-hermitiano) e contagem de modos de borda."""
    quasienergies: np.ndarray
    edge_zero: np.ndarray
    edge_pi: np.ndarray
    condition: float = 1.0

    @property
    def n_zero(self) -> float:
        return int(np.sum(self.edge_zero)) / 2.0

    @property
    def n_pi(self) -> float:
        return int(np.sum(self.edge_pi)) / 2.0

    def columns(self) -> Dict[str, np.ndarray]:
        return {"re_eps": self.quasienergies.real, "im_eps": self.quasienergies.imag,
                "edge_zero": self.edge_zero, "edge_pi": self.edge_pi}


def open_spectrum(model: DrivenTwoBandModel, n_cells: int,
                  tol_fraction: float = EDGE_TOL_FRACTION,
                  edge_weight: float = EDGE_WEIGHT) -> OpenSpectrum:
    """
    Quasienergias i ln(λ)/T do propagador de um período em cadeia aberta.

    Kitaev: modos de borda por proximidade a 0 ou π/T e peso ≥ edge_weight
    nos 10% externos. SSH não-hermitiano: apenas proximidade, pois o efeito
    de pele localiza todos os estados nas bordas.
    """
    period = model.period
    tol = tol_fraction * 2.0 * np.pi / period
    if model.kind is ModelKind.KITAEV:
        h1 = model.params.bdg_open(n_cells, 0)
        h2 = model.params.bdg_open(n_cells, 1)
        propagator = _hermitian_step(h2, model.T2) @ _hermitian_step(h1, model.T1)
        condition = 1.0
    elif model.kind is ModelKind.NHSSH:
        h1 = model.params.real_space(n_cells, 0)
        h2 = model.params.real_space(n_cells, 1)
        propagator = linalg.expm(-1j * h2 * model.T2) @ linalg.expm(-1j * h1 * model.T1)
        _, right = linalg.eig(propagator)
        condition = float(np.linalg.cond(right))
        if condition > 1e8:
            logger.warning("[TOPO] propagador mal condicionado (κ = %.2e)", condition)
    else:
        raise ScenarioValidationError("open_spectrum: use haldane_ribbon_edge_flow para Haldane.",
                                      key="model")

    triangular, vectors = linalg.schur(propagator, output="complex")
    eigenvalues = np.diag(triangular)
    epsilon = 1j * np.log(eigenvalues) / period
    epsilon = _fold(epsilon.real, period) + 1j * epsilon.imag
    near_zero = np.abs(epsilon) < tol
    near_pi = np.hypot(np.pi / period - np.abs(epsilon.real), epsilon.imag) < tol

    if model.kind is ModelKind.KITAEV:
        sites = np.abs(vectors[:n_cells]) ** 2 + np.abs(vectors[n_cells:]) ** 2
        edge = max(1, int(round(EDGE_REGION * n_cells)))
        outer = sites[:edge].sum(axis=0) + sites[-edge:].sum(axis=0)
        localized = outer >= edge_weight
        near_zero &= localized
        near_pi &= localized
    return OpenSpectrum(quasienergies=epsilon, edge_zero=near_zero, edge_pi=near_pi,
                        condition=condition)


def bloch_quasienergies(model: DrivenTwoBandModel, n_k: int = 256) -> np.ndarray:
    """Quasienergias com contorno periódico (BZ convencional), forma (n_k, 2)."""
    k = 2.0 * np.pi * np.arange(n_k) / n_k
    if model.kind is ModelKind.NHSSH:
        beta = np.exp(1j * k)
        first0, first = _pauli_exponential(model.params.bloch(beta, 0), model.T1)
        second0, second = _pauli_exponential(model.params.bloch(beta, 1), model.T2)
        u0, u = _pauli_product(second0, second, first0, first)
        root = np.sqrt(np.sum(u * u, axis=-1) + 0j)
        eigenvalues = np.stack([u0 - root, u0 + root], axis=-1)
        epsilon = 1j * np.log(eigenvalues) / model.period
        return _fold(epsilon.real, model.period) + 1j * epsilon.imag
    phase = floquet_of(model, _k_grid(model, n_k) if model.k_dim == 2 else k).phase
    return np.stack([-phase, phase], axis=-1) / model.period
