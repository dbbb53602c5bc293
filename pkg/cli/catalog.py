"""
PyBound - Catálogo de Cenários
Cenários embutidos: padrões resolvidos, eixo padrão e a função que avalia
um ponto do eixo. As funções de ponto ficam no nível do módulo para serem
enviadas ao pool de processos.
"""

import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy import special

from core.dynamics import (
    OscillatorState, asymptotic_rates, effective_temperature, propagate,
    rates_from_u, solve_thermal, solve_u,
)
from core.errors import ScenarioValidationError
from core.floquet import analyze, asymptotic_projection, build_battery, build_spinchain, stroboscopic_evolve
from core.metrics import (
    heisenberg_limit, minimize_precision, mzi_precision, qsl_time, ramsey_precision, snl_limit,
    zeno_limit,
)
from core.spectra import OhmicFamily, Plasmonic, bound_state_solve, evaluate_J, spp_dispersion
from core.topology import (
    DrivenTwoBandModel, HaldanePiece, HaldaneParams, KitaevParams, ModelKind, NHSSHParams,
    chern_number, gap_closing_locus, haldane_ribbon_edge_flow, kitaev_invariants, kitaev_model,
    minimal_gap, nhssh_invariants, open_spectrum,
)

PointFunction = Callable[[Dict[str, Any]], Dict[str, Any]]
DetailFunction = Callable[[Dict[str, Any], List[float]], Dict[str, np.ndarray]]

NAN = float("nan")


@dataclass
class CatalogEntry:
    """Cenário embutido."""
    name: str
    description: str
    units: str
    defaults: Dict[str, Any]
    point: PointFunction
    plot_columns: Tuple[str, ...]
    detail: Optional[DetailFunction] = None


# =============================================================================
# AUXILIARES
# =============================================================================

def _ohmic(config: Dict[str, Any]) -> OhmicFamily:
    return OhmicFamily(eta=config["spectral_density.eta"], s=config["spectral_density.s"],
                       omega_c=config["spectral_density.omega_c"])


def _ohmic_defaults(eta: float, omega_c: float) -> Dict[str, Any]:
    return {
        "spectral_density.kind": "ohmic",
        "spectral_density.eta": eta,
        "spectral_density.s": 1.0,
        "spectral_density.omega_c": omega_c,
    }


def _bound_columns(bound) -> Dict[str, Any]:
    return {
        "bound_state": bound is not None,
        "E_b": bound.energy if bound is not None else NAN,
        "Z": bound.residue if bound is not None else NAN,
    }


def _u_on(sd, omega: float, t: np.ndarray, h: float) -> np.ndarray:
    """u(t) nos tempos pedidos, interpolando a solução na malha uniforme."""
    traj = solve_u(sd, omega, float(np.max(t)) + 2.0 * h, h)
    return np.interp(t, traj.t, traj.u.real) + 1j * np.interp(t, traj.t, traj.u.imag)


def _tail(values: np.ndarray, fraction: float) -> np.ndarray:
    count = max(1, int(round(fraction * values.size)))
    return values[-count:]


# =============================================================================
# DINÂMICA E ESTADOS LIGADOS
# =============================================================================

def _qsl_row(config: Dict[str, Any]):
    sd = _ohmic(config)
    omega0 = config["omega0"]
    traj = solve_u(sd, omega0, config["grid.t_end"], config["grid.h"])
    qsl = qsl_time(traj, config["qsl.tau"])
    row = _bound_columns(bound_state_solve(sd, omega0))
    row.update({
        "non_markovianity": qsl.non_markovianity,
        "tau_qsl_over_tau": qsl.tau_qsl / qsl.tau,
        "abs_u_end": float(abs(traj.u[-1])),
    })
    return row, traj


def qsl_point(config: Dict[str, Any]) -> Dict[str, Any]:
    return _qsl_row(config)[0]


def dynamics_point(config: Dict[str, Any]) -> Dict[str, Any]:
    row, traj = _qsl_row(config)
    row["gamma_end"] = float(rates_from_u(traj).gamma[-1])
    return row


def dynamics_detail(config: Dict[str, Any], axis_values: List[float]) -> Dict[str, np.ndarray]:
    config = dict(config)
    config[config["axis.key"]] = axis_values[-1]
    traj = solve_u(_ohmic(config), config["omega0"], config["grid.t_end"], config["grid.h"])
    columns = traj.columns()
    columns.update(rates_from_u(traj).columns())
    return columns


def bound_scan_point(config: Dict[str, Any]) -> Dict[str, Any]:
    sd = _ohmic(config)
    omega0 = config["omega0"]
    row = _bound_columns(bound_state_solve(sd, omega0))
    row["analytic_present"] = bool(omega0 < sd.eta * sd.omega_c * special.gamma(sd.s))
    return row


def thermal_point(config: Dict[str, Any]) -> Dict[str, Any]:
    sd = _ohmic(config)
    omega0 = config["omega0"]
    beta = config["thermal.beta"]
    traj = solve_u(sd, omega0, config["grid.t_end"], config["grid.h"])
    thermal, rates = solve_thermal(sd, omega0, beta, traj)
    tail = asymptotic_rates(rates)
    omega = tail.Omega if config["thermal.renormalized"] and math.isfinite(tail.Omega) else omega0
    temperature = effective_temperature(tail.Gamma, tail.Gamma_beta, omega,
                                        math.pi * float(evaluate_J(sd, omega0)))
    finals = np.array([propagate(thermal, rates, OscillatorState(n0))
                       .observables["mean_photon_number"][-1]
                       for n0 in config["thermal.n0_values"]])
    row = _bound_columns(bound_state_solve(sd, omega0))
    row.update({
        "Gamma_inf": tail.Gamma,
        "Omega_inf": tail.Omega,
        "Gamma_beta_inf": tail.Gamma_beta,
        "T": 1.0 / beta,
        "T_eff": temperature.value,
        "T_eff_status": temperature.status,
        "n_inf_spread": float(np.ptp(finals) / np.mean(finals)),
    })
    return row


# =============================================================================
# METROLOGIA
# =============================================================================

def mzi_curve(config: Dict[str, Any]):
    sd = _ohmic(config)
    omega0 = config["omega0"]
    gamma = config["mzi.gamma"]
    h = config["grid.h"]
    t = np.asarray(config["mzi.t_values"], dtype=float)
    bound = bound_state_solve(sd, omega0 + gamma)
    curve = mzi_precision(lambda g: _u_on(sd, omega0 + g, t, h), omega0, gamma,
                          config["mzi.N"], config["mzi.beta"], t,
                          phase_alpha=config["mzi.phase_alpha"], phase_xi=config["mzi.phase_xi"],
                          kappa=math.pi * float(evaluate_J(sd, omega0 + gamma)),
                          residue=bound.residue if bound is not None else None)
    return curve, bound


def mzi_point(config: Dict[str, Any]) -> Dict[str, Any]:
    curve, bound = mzi_curve(config)
    t_opt, delta_min = minimize_precision(curve)
    row = _bound_columns(bound)
    row.update({
        "t_opt": t_opt,
        "delta_min": delta_min,
        "snl_at_t_opt": float(snl_limit(t_opt, config["mzi.N"])),
        "zeno_at_t_opt": float(zeno_limit(t_opt, config["mzi.N"])),
    })
    return row


def mzi_detail(config: Dict[str, Any], axis_values: List[float]) -> Dict[str, np.ndarray]:
    config = dict(config)
    config[config["axis.key"]] = axis_values[-1]
    return mzi_curve(config)[0].columns()


def ramsey_point(config: Dict[str, Any]) -> Dict[str, Any]:
    sd = _ohmic(config)
    omega0 = config["omega0"]
    h = config["grid.h"]
    n_atoms = config["ramsey.n"]
    total_time = config["ramsey.T"]
    t = np.asarray(config["ramsey.t_values"], dtype=float)
    bound = bound_state_solve(sd, omega0)
    curve = ramsey_precision(lambda w: _u_on(sd, w, t, h), omega0, n_atoms, total_time, t,
                             kappa=math.pi * float(evaluate_J(sd, omega0)),
                             residue=bound.residue if bound is not None else None)
    t_opt, delta_min = minimize_precision(curve)
    row = _bound_columns(bound)
    row.update({
        "t_opt": t_opt,
        "delta_min": delta_min,
        "hl_at_t_opt": float(heisenberg_limit(t_opt, n_atoms, total_time)),
    })
    return row


# =============================================================================
# PLASMÔNICA
# =============================================================================

def _plasmonic(config: Dict[str, Any]) -> Plasmonic:
    return Plasmonic(dz=config["plasmonic.dz"], omega0=config["omega0"],
                     gamma0=config["plasmonic.gamma0"], eps_d=config["plasmonic.eps_d"],
                     eps_inf=config["plasmonic.eps_inf"], omega_p=config["plasmonic.omega_p"],
                     gamma_p=config["plasmonic.gamma_p"])


def plasmonic_point(config: Dict[str, Any]) -> Dict[str, Any]:
    sd = _plasmonic(config)
    omega = config["omega"]
    k = spp_dispersion(sd, omega)
    return {"J": float(evaluate_J(sd, omega)), "re_k_spp": k.real, "im_k_spp": k.imag}


# =============================================================================
# FLOQUET
# =============================================================================

def _spinchain(config: Dict[str, Any]):
    J = config["chain.J"]
    return build_spinchain(int(config["chain.L"]), config["chain.lambda"] * J, J,
                           config["chain.g"] * J, config["drive.a1"] * J, config["drive.a2"] * J,
                           config["drive.tau"] * math.pi / J, config["drive.T"] * math.pi / J)


def fbs_point(config: Dict[str, Any]) -> Dict[str, Any]:
    model = _spinchain(config)
    spectrum = analyze(model)
    n_periods = config["evolution.periods"]
    series = stroboscopic_evolve(model, None, n_periods, spectrum=spectrum)
    projection = asymptotic_projection(spectrum, model, n_periods=8, samples_per_period=1)
    superposition = np.zeros(model.dim, dtype=complex)
    superposition[model.initial_index] = 1.0 / math.sqrt(2.0)
    coherent = stroboscopic_evolve(model, superposition, n_periods,
                                   vacuum_amplitude=1.0 / math.sqrt(2.0), spectrum=spectrum)
    fraction = config["evolution.tail_fraction"]
    return {
        "n_fbs": spectrum.n_fbs,
        "P_long": float(np.mean(_tail(series.observable, fraction))),
        "P_projection": projection.mean_value,
        "F_long": float(np.mean(_tail(coherent.fidelity, fraction))),
    }


def fbs_detail(config: Dict[str, Any], axis_values: List[float]) -> Dict[str, np.ndarray]:
    columns: Dict[str, np.ndarray] = {}
    for value in axis_values:
        config_point = dict(config)
        config_point[config["axis.key"]] = value
        model = _spinchain(config_point)
        series = stroboscopic_evolve(model, None, config["evolution.periods"])
        columns.setdefault("t", series.t)
        columns[f"P_t[{value!r}]"] = series.observable
    return columns


def _battery(config: Dict[str, Any]):
    varpi = config["lattice.varpi"]
    kappa = config["charger.kappa"] * varpi
    tau = config["protocol.tau_factor"] * math.pi / (2.0 * kappa)
    return build_battery(int(config["lattice.N"]), config["battery.omega_b"] * varpi,
                         config["charger.omega_c"] * varpi, kappa, config["coupling.g"] * varpi,
                         config["lattice.q"] * varpi, varpi, tau, tau, tau)


def battery_point(config: Dict[str, Any]) -> Dict[str, Any]:
    model = _battery(config)
    spectrum = analyze(model)
    series = stroboscopic_evolve(model, None, config["evolution.periods"],
                                 samples_per_period=config["evolution.samples"], spectrum=spectrum)
    projection = asymptotic_projection(spectrum, model, n_periods=8,
                                       samples_per_period=config["evolution.samples"])
    tail = _tail(series.observable, config["evolution.tail_fraction"])
    return {
        "n_fbs": spectrum.n_fbs,
        "energy_long_mean": float(np.mean(tail)),
        "energy_long_amplitude": float(np.ptp(tail)),
        "projection_mean": projection.mean_value,
        "delta_eps0": projection.beat_frequency if projection.beat_frequency is not None else NAN,
    }


def battery_detail(config: Dict[str, Any], axis_values: List[float]) -> Dict[str, np.ndarray]:
    config = dict(config)
    config[config["axis.key"]] = axis_values[-1]
    model = _battery(config)
    return stroboscopic_evolve(model, None, config["evolution.periods"],
                               samples_per_period=config["evolution.samples"]).columns()


# =============================================================================
# TOPOLOGIA
# =============================================================================

def kitaev_point(config: Dict[str, Any]) -> Dict[str, Any]:
    delta1 = config["kitaev.delta1"]
    params = KitaevParams(mu=config["kitaev.mu"], t1=config["kitaev.t1"], t2=config["kitaev.t2"],
                          delta1=delta1, delta2=config["kitaev.delta2"],
                          phi1=config["kitaev.phi1"], phi2=config["kitaev.phi2"])
    model = kitaev_model(params, config["drive.T"])
    invariants = kitaev_invariants(model, config["winding.points"])
    spectrum = open_spectrum(model, int(config["open.L"]),
                             tol_fraction=config["tolerance.edge_fraction"],
                             edge_weight=config["tolerance.edge_weight"])
    return {
        "W1": invariants.W1, "W2": invariants.W2,
        "n_zero": invariants.n_zero, "n_pi": invariants.n_pi,
        "open_n_zero": spectrum.n_zero, "open_n_pi": spectrum.n_pi,
        "bulk_boundary": (spectrum.n_zero, spectrum.n_pi) == (invariants.n_zero, invariants.n_pi),
    }


def _haldane(config: Dict[str, Any]) -> DrivenTwoBandModel:
    t1 = config["haldane.t1"]
    params = HaldaneParams(
        t1=t1, t2=config["haldane.t2"] * t1, M=config["haldane.M"] * t1,
        piece1=HaldanePiece(config["piece1.t3"] * t1, config["piece1.phi"]),
        piece2=HaldanePiece(config["piece2.t3"] * t1, config["piece2.phi"]),
    )
    return DrivenTwoBandModel(ModelKind.HALDANE, params, config["drive.T1"], config["drive.T2"])


def haldane_point(config: Dict[str, Any]) -> Dict[str, Any]:
    model = _haldane(config)
    grid = int(config["chern.grid"])
    row = {"min_gap": minimal_gap(model, grid), "chern": chern_number(model, grid)}
    if config["ribbon.enabled"]:
        flow = haldane_ribbon_edge_flow(model, int(config["ribbon.cells"]),
                                        int(config["ribbon.kappa_points"]))
        row.update({"edge_flow_zero": flow.zero, "edge_flow_pi": flow.pi})
    return row


def gap_closing_point(config: Dict[str, Any]) -> Dict[str, Any]:
    closings = gap_closing_locus(_haldane(config), n_k=int(config["closing.grid"]),
                                 threshold=config["closing.threshold"])
    conditions = [c.condition for c in closings]
    return {
        "n_closings": len(closings),
        "n_piece_resonance": conditions.count("piece_resonance"),
        "n_collinear": conditions.count("collinear"),
        "n_anomaly": conditions.count("anomaly"),
        "n_zero_gap": sum(1 for c in closings if c.quasienergy == "zero"),
        "n_pi_gap": sum(1 for c in closings if c.quasienergy == "pi"),
    }


def _nhssh(config: Dict[str, Any]) -> DrivenTwoBandModel:
    gamma = config["nhssh.gamma"]
    params = NHSSHParams(t1=config["nhssh.t1"] * gamma, gamma=gamma,
                         f=config["drive.f"] * gamma, q=config["drive.q"])
    return DrivenTwoBandModel(ModelKind.NHSSH, params, config["drive.T1"] / gamma,
                              config["drive.T2"] / gamma)


def nhssh_point(config: Dict[str, Any]) -> Dict[str, Any]:
    model = _nhssh(config)
    invariants = nhssh_invariants(model, config["winding.points"])
    spectrum = open_spectrum(model, int(config["open.L"]),
                             tol_fraction=config["tolerance.edge_fraction"])
    return {
        "W1": invariants.W1, "W2": invariants.W2,
        "n_zero": invariants.n_zero, "n_pi": invariants.n_pi,
        "bz_W1": invariants.bz_W1 if invariants.bz_W1 is not None else NAN,
        "bz_W2": invariants.bz_W2 if invariants.bz_W2 is not None else NAN,
        "open_n_zero": spectrum.n_zero, "open_n_pi": spectrum.n_pi,
        "condition": spectrum.condition,
    }


def nhssh_detail(config: Dict[str, Any], axis_values: List[float]) -> Dict[str, np.ndarray]:
    """Espectros abertos ao longo do eixo (uma linha por quasienergia)."""
    parts: Dict[str, List[np.ndarray]] = {"f": [], "re_eps": [], "im_eps": [],
                                          "edge_zero": [], "edge_pi": []}
    for value in axis_values:
        config_point = dict(config)
        config_point[config["axis.key"]] = value
        spectrum = open_spectrum(_nhssh(config_point), int(config["open.L"]),
                                 tol_fraction=config["tolerance.edge_fraction"])
        columns = spectrum.columns()
        order = np.lexsort((columns["im_eps"], columns["re_eps"]))
        parts["f"].append(np.full(order.size, value))
        for name in ("re_eps", "im_eps", "edge_zero", "edge_pi"):
            parts[name].append(np.asarray(columns[name])[order])
    return {name: np.concatenate(chunks) for name, chunks in parts.items()}


# =============================================================================
# CATÁLOGO
# =============================================================================

def _grid(start: float, stop: float, num: int) -> List[float]:
    return np.linspace(start, stop, num).tolist()


_ENTRIES: List[CatalogEntry] = [
    CatalogEntry(
        name="fig2-qsl",
        description="Não-Markovianidade e τ_QSL/τ em função de η (Ohmic, ω₀ = 0.1ω_c)",
        units="omega_c",
        defaults={**_ohmic_defaults(0.1, 1.0), "omega0": 0.1, "grid.t_end": 200.0,
                  "grid.h": 0.25, "qsl.tau": 200.0,
                  "axis.key": "spectral_density.eta", "axis.values": _grid(0.02, 0.3, 15)},
        point=qsl_point,
        plot_columns=("non_markovianity", "tau_qsl_over_tau"),
    ),
    CatalogEntry(
        name="fig3-thermalization",
        description="Taxas assintóticas, T_eff e dependência de N(∞) com N(0) em função de ω_c",
        units="omega0",
        defaults={**_ohmic_defaults(0.1, 5.0), "omega0": 1.0, "thermal.beta": 0.1,
                  "thermal.renormalized": True, "thermal.n0_values": [0.0, 5.0],
                  "grid.t_end": 100.0, "grid.h": 0.005,
                  "axis.key": "spectral_density.omega_c", "axis.values": [5.0, 20.0, 150.0]},
        point=thermal_point,
        plot_columns=("Gamma_inf", "Gamma_beta_inf", "T_eff"),
    ),
    CatalogEntry(
        name="fig4-mzi",
        description="Precisão do interferômetro de Mach-Zehnder com luz comprimida e perda de fótons",
        units="omega0",
        defaults={**_ohmic_defaults(0.05, 50.0), "omega0": 1.0, "mzi.gamma": math.pi,
                  "mzi.N": 100.0, "mzi.beta": 0.05, "mzi.phase_alpha": 0.0, "mzi.phase_xi": 0.0,
                  "mzi.t_values": _grid(0.5, 9.5, 10), "grid.h": 0.005,
                  "axis.key": "spectral_density.eta", "axis.values": [0.01, 0.05, 0.2]},
        point=mzi_point,
        plot_columns=("delta_min", "zeno_at_t_opt"),
        detail=mzi_detail,
    ),
    CatalogEntry(
        name="fig5-fbs",
        description="Estado ligado de Floquet na cadeia de spins acionada em função de a₂",
        units="J",
        defaults={"chain.L": 800, "chain.J": 1.0, "chain.lambda": 20.0, "chain.g": 1.0,
                  "drive.a1": 0.0, "drive.a2": 36.0, "drive.T": 0.05, "drive.tau": 0.02,
                  "evolution.periods": 1000, "evolution.tail_fraction": 0.2,
                  "axis.key": "drive.a2", "axis.values": [1.5, 12.0, 36.0]},
        point=fbs_point,
        plot_columns=("n_fbs", "P_long", "P_projection", "F_long"),
        detail=fbs_detail,
    ),
    CatalogEntry(
        name="fig6-battery",
        description="Bateria quântica com reservatórios em rede 2D em função de κ",
        units="varpi",
        defaults={"lattice.N": 30, "lattice.varpi": 1.0, "lattice.q": 0.5,
                  "battery.omega_b": 2.0, "charger.omega_c": 2.0, "coupling.g": 0.5,
                  "charger.kappa": 1.0, "protocol.tau_factor": 1.0,
                  "evolution.periods": 200, "evolution.samples": 8,
                  "evolution.tail_fraction": 0.25,
                  "axis.key": "charger.kappa", "axis.values": [0.1, 0.5, 2.0, 4.0]},
        point=battery_point,
        plot_columns=("n_fbs", "energy_long_mean", "delta_eps0"),
        detail=battery_detail,
    ),
    CatalogEntry(
        name="fig7-kitaev",
        description="Pares de modos de Majorana em 0 e π/T na cadeia de Kitaev com troca de fases",
        units="delta1",
        defaults={"kitaev.mu": -10.0, "kitaev.t1": 1.0, "kitaev.t2": 1.5, "kitaev.delta1": 1.0,
                  "kitaev.delta2": 2.5, "kitaev.phi1": 0.0, "kitaev.phi2": math.pi / 2,
                  "drive.T": 0.33, "open.L": 100, "winding.points": 4096,
                  "tolerance.edge_fraction": 1e-3, "tolerance.edge_weight": 0.6,
                  "axis.key": "drive.T",
                  "axis.values": [0.15, 0.2, 0.27, 0.3, 0.33, 0.38, 0.42]},
        point=kitaev_point,
        plot_columns=("n_zero", "n_pi", "open_n_zero", "open_n_pi"),
    ),
    CatalogEntry(
        name="fig8-haldane",
        description="Número de Chern do modelo de Haldane acionado no plano (T₁, T₂)",
        units="t1",
        defaults={"haldane.t1": 1.0, "haldane.t2": 0.8, "haldane.M": 0.0,
                  "piece1.t3": 0.75, "piece1.phi": -math.pi / 6,
                  "piece2.t3": -0.75, "piece2.phi": -math.pi / 2,
                  "drive.T1": 0.9, "drive.T2": 1.2, "chern.grid": 60,
                  "ribbon.enabled": False, "ribbon.cells": 40, "ribbon.kappa_points": 240,
                  "axis.key": "drive.T1", "axis.values": [0.9, 1.3]},
        point=haldane_point,
        plot_columns=("chern", "min_gap"),
    ),
    CatalogEntry(
        name="haldane-gap-closings",
        description="Fechamentos de gap de quasienergia e suas condições analíticas ao longo de T₁",
        units="t1",
        defaults={"haldane.t1": 1.0, "haldane.t2": 0.8, "haldane.M": 0.0,
                  "piece1.t3": 0.75, "piece1.phi": -math.pi / 6,
                  "piece2.t3": -0.75, "piece2.phi": -math.pi / 2,
                  "drive.T1": 0.9, "drive.T2": 1.2, "closing.grid": 90,
                  "closing.threshold": 1e-3,
                  "axis.key": "drive.T1", "axis.values": _grid(0.1, 1.5, 15)},
        point=gap_closing_point,
        plot_columns=("n_closings", "n_anomaly"),
    ),
    CatalogEntry(
        name="fig9-nhssh",
        description="Modos de borda 0 e π/T do SSH não-hermitiano acionado (GBZ vs BZ)",
        units="gamma",
        defaults={"nhssh.gamma": 1.0, "nhssh.t1": 2.0, "drive.f": 1.0, "drive.q": 3.0,
                  "drive.T1": 0.6, "drive.T2": 0.6, "open.L": 80, "winding.points": 4096,
                  "tolerance.edge_fraction": 1e-3,
                  "axis.key": "drive.f", "axis.values": _grid(0.25, 3.0, 12)},
        point=nhssh_point,
        plot_columns=("n_zero", "n_pi", "open_n_zero", "open_n_pi"),
        detail=nhssh_detail,
    ),
    CatalogEntry(
        name="ohmic-dynamics",
        description="u(t), taxas, 𝒩 e τ_QSL para um ponto do banho Ohmic",
        units="omega_c",
        defaults={**_ohmic_defaults(0.2, 1.0), "omega0": 0.1, "grid.t_end": 200.0,
                  "grid.h": 0.25, "qsl.tau": 200.0,
                  "axis.key": "spectral_density.eta", "axis.values": [0.2]},
        point=dynamics_point,
        plot_columns=("abs_u_end", "non_markovianity"),
        detail=dynamics_detail,
    ),
    CatalogEntry(
        name="plasmonic-spectrum",
        description="J(ω) plasmônico e k_SPP(ω) para emissor próximo de interface metálica",
        units="eV",
        defaults={"omega0": 1.2, "omega": 1.2, "plasmonic.dz": 1.2, "plasmonic.gamma0": 1e-4,
                  "plasmonic.eps_d": 25.0, "plasmonic.eps_inf": 6.0, "plasmonic.omega_p": 9.0,
                  "plasmonic.gamma_p": 0.1,
                  "axis.key": "omega", "axis.values": _grid(0.2, 3.0, 15)},
        point=plasmonic_point,
        plot_columns=("J", "re_k_spp", "im_k_spp"),
    ),
    CatalogEntry(
        name="bound-state-scan",
        description="E_b e Z em função de η, com o critério analítico ω₀ < ηω_cΓ(s)",
        units="omega_c",
        defaults={**_ohmic_defaults(0.1, 1.0), "omega0": 0.1,
                  "axis.key": "spectral_density.eta", "axis.values": _grid(0.02, 0.3, 29)},
        point=bound_scan_point,
        plot_columns=("E_b", "Z"),
    ),
    CatalogEntry(
        name="ramsey",
        description="Precisão de Ramsey com estado GHZ de n átomos sob dissipação",
        units="omega0",
        defaults={**_ohmic_defaults(0.05, 50.0), "omega0": 1.0, "ramsey.n": 2,
                  "ramsey.T": 100.0, "ramsey.t_values": _grid(0.5, 10.0, 20), "grid.h": 0.005,
                  "axis.key": "spectral_density.eta", "axis.values": [0.005, 0.05]},
        point=ramsey_point,
        plot_columns=("delta_min", "hl_at_t_opt"),
    ),
]

CATALOG: Dict[str, CatalogEntry] = {entry.name: entry for entry in _ENTRIES}


def list_scenarios() -> List[Tuple[str, str]]:
    """(nome, descrição) na ordem estável do catálogo."""
    return [(entry.name, entry.description) for entry in _ENTRIES]


def get_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise ScenarioValidationError(f"cenário desconhecido: {name!r}", key="scenario") from None
