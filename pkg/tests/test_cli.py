"""Testes de ponta a ponta da linha de comando."""

import csv
import hashlib
import json

import pytest

from cli.app import main
from cli.catalog import list_scenarios
from cli.plots import build_figure


def read_rows(path):
    with open(path, encoding="utf-8", newline="") as f:
        lines = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(lines))


def test_list_prints_catalog(capsys) -> None:
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    names = [line.split("\t")[0] for line in out.splitlines()]
    assert "fig5-fbs" in names and "bound-state-scan" in names


# =============================================================================
# CÓDIGOS DE SAÍDA
# =============================================================================

def test_empty_config_exits_with_parse_code(tmp_path) -> None:
    config = tmp_path / "vazio.json"
    config.write_text("", encoding="utf-8")
    assert main(["run", "bound-state-scan", "--config", str(config), "--out", str(tmp_path)]) == 2


def test_unknown_key_exits_with_validation_code(tmp_path) -> None:
    config = tmp_path / "config.json"
    config.write_text('{"spectral_density.etta": 0.2}', encoding="utf-8")
    assert main(["run", "bound-state-scan", "--config", str(config), "--out", str(tmp_path)]) == 3


def test_invalid_workers_and_scenario(tmp_path) -> None:
    assert main(["run", "bound-state-scan", "--workers", "0", "--out", str(tmp_path)]) == 3
    assert main(["run", "nao-existe", "--out", str(tmp_path)]) == 3


# =============================================================================
# RUN
# =============================================================================

def test_run_bound_state_scan(tmp_path) -> None:
    out = tmp_path / "a"
    assert main(["run", "bound-state-scan", "--out", str(out), "--no-plot"]) == 0

    table = out / "bound-state-scan.csv"
    summary = json.loads((out / "bound-state-scan_summary.json").read_text(encoding="utf-8"))
    assert summary["metrics"]["n_points"] == 29
    assert summary["metrics"]["n_failed"] == 0
    assert summary["tables"]["bound-state-scan.csv"] == hashlib.sha256(table.read_bytes()).hexdigest()
    assert not (out / "bound-state-scan_plot.py").exists()

    rows = read_rows(table)
    first_bound = next(float(r["spectral_density.eta"]) for r in rows if r["bound_state"] == "true")
    assert first_bound == pytest.approx(0.1, abs=0.0101)
    away = [r for r in rows if abs(float(r["spectral_density.eta"]) - 0.1) > 1e-6]
    assert all(r["bound_state"] == r["analytic_present"] for r in away)

    again = tmp_path / "b"
    assert main(["run", "bound-state-scan", "--out", str(again), "--no-plot"]) == 0
    assert (again / "bound-state-scan.csv").read_bytes() == table.read_bytes()


def test_workers_do_not_change_the_table(tmp_path) -> None:
    assert main(["run", "bound-state-scan", "--out", str(tmp_path / "s"), "--no-plot"]) == 0
    assert main(["run", "bound-state-scan", "--out", str(tmp_path / "p"), "--no-plot",
                 "--workers", "2"]) == 0
    serial = (tmp_path / "s" / "bound-state-scan.csv").read_bytes()
    assert (tmp_path / "p" / "bound-state-scan.csv").read_bytes() == serial


def test_run_with_failing_point_exits_numerical(tmp_path) -> None:
    config = tmp_path / "config.json"
    config.write_text('{"axis.values": [-0.1, 0.1]}', encoding="utf-8")
    out = tmp_path / "out"
    assert main(["run", "bound-state-scan", "--config", str(config), "--out", str(out),
                 "--no-plot"]) == 4
    rows = read_rows(out / "bound-state-scan.csv")
    assert [r["ok"] for r in rows] == ["false", "true"]


def test_plot_outputs(tmp_path) -> None:
    assert main(["run", "bound-state-scan", "--out", str(tmp_path), "--html"]) == 0
    assert (tmp_path / "bound-state-scan_plot.py").exists()
    assert (tmp_path / "bound-state-scan.html").exists()


# =============================================================================
# SWEEP
# =============================================================================

def test_sweep_flags_failed_points(tmp_path) -> None:
    code = main(["sweep", "bound-state-scan", "--axis", "spectral_density.eta=-0.1,0.2",
                 "--out", str(tmp_path), "--no-plot"])
    assert code == 0
    rows = read_rows(tmp_path / "bound-state-scan_sweep.csv")
    assert rows[0]["ok"] == "false" and rows[0]["error"]
    assert rows[1]["ok"] == "true" and rows[1]["bound_state"] == "true"
    summary = json.loads((tmp_path / "bound-state-scan_sweep_summary.json").read_text(encoding="utf-8"))
    assert summary["metrics"]["n_failed"] == 1


def test_sweep_rejects_undeclared_axis(tmp_path) -> None:
    assert main(["sweep", "bound-state-scan", "--axis", "drive.a2=1,2",
                 "--out", str(tmp_path)]) == 3


def test_build_figure_one_trace_per_column() -> None:
    header = ["eta", "E_b", "Z", "ok", "error"]
    rows = [[0.1, -0.2, 0.9, True, ""], [0.2, float("nan"), float("nan"), False, "x"]]
    fig = build_figure(header, rows, "eta", ["E_b", "Z"], "teste")
    assert len(fig.data) == 2
    assert list(fig.data[0].x) == [0.1]


def test_list_scenarios_is_stable() -> None:
    names = [name for name, _ in list_scenarios()]
    assert names == [name for name, _ in list_scenarios()]
    for figure in ("fig2-qsl", "fig3-thermalization", "fig4-mzi", "fig5-fbs", "fig6-battery",
                   "fig7-kitaev", "fig8-haldane", "fig9-nhssh"):
        assert figure in names


def test_cli_log_lines_are_tagged(tmp_path, capsys) -> None:
    assert main(["run", "nao-existe", "--out", str(tmp_path)]) == 3
    assert "[CONFIG] configuração inválida (scenario)" in capsys.readouterr().err
    assert main(["run", "bound-state-scan", "--out", str(tmp_path), "--no-plot"]) == 0
    assert "[CLI] cenário bound-state-scan concluído" in capsys.readouterr().err
