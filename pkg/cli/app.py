"""
PyBound - Linha de Comando
Executa cenários do catálogo (run), varreduras sobre um eixo (sweep) e
lista os cenários disponíveis (list). Tabelas, resumo JSON e scripts de
gráfico vão para o diretório de saída; logs vão para stderr.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from core.errors import NumericalError, PyBoundError, ScenarioValidationError
from core.export import export_columns_csv, export_summary_json, export_table_csv
from core.scenario import VERSION, Scenario, build_scenario, read_config
from core.sweep import SweepAxis, SweepEngine, SweepResult

from .catalog import CatalogEntry, get_entry, list_scenarios
from .plots import write_html, write_plot_script

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NUMERICAL = NumericalError.exit_code


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr, force=True,
                        format="%(levelname)s %(name)s: %(message)s")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pybound",
        description="Dinâmica de estados ligados e sistemas Floquet: cenários reprodutíveis.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="logs de depuração")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="apenas avisos e erros")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("scenario", help="nome do cenário (veja 'list')")
        sub.add_argument("--config", help="arquivo JSON com chaves pontuadas")
        sub.add_argument("--out", help="diretório de saída (padrão: $PYBOUND_OUTPUT_DIR)")
        sub.add_argument("--workers", type=int, help="processos para os pontos do eixo")
        sub.add_argument("--no-plot", action="store_true", help="não escrever o script de gráfico")
        sub.add_argument("--html", action="store_true", help="escrever também o gráfico Plotly")

    run = commands.add_parser("run", help="executa o cenário no eixo padrão")
    add_common(run)
    sweep = commands.add_parser("sweep", help="varre o cenário sobre um eixo")
    add_common(sweep)
    sweep.add_argument("--axis", required=True,
                       help="chave=início:fim:n ou chave=v1,v2,... sobre uma chave declarada")
    commands.add_parser("list", help="lista os cenários do catálogo")
    return parser


# =============================================================================
# EXECUÇÃO
# =============================================================================

def resolve(entry: CatalogEntry, args: argparse.Namespace) -> Scenario:
    overrides: Dict[str, Any] = read_config(args.config) if args.config else {}
    return build_scenario(entry.name, entry.defaults, overrides, output_dir=args.out,
                          workers=args.workers, units=entry.units)


def write_outputs(entry: CatalogEntry, scenario: Scenario, result: SweepResult, base: str,
                  command: str, plot: bool, html: bool) -> Dict[str, Any]:
    """Escreve tabela, detalhe, gráficos e resumo; devolve o resumo."""
    out = Path(scenario.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    parameters = dict(scenario.parameters)
    parameters["axis.key"] = result.axis.key
    parameters["axis.values"] = list(result.axis.values)

    header, rows = result.header(), result.rows()
    table = f"{base}.csv"
    checksums = {table: export_table_csv(str(out / table), header, rows, parameters)}

    if command == "run" and entry.detail is not None and result.n_failed == 0:
        detail = f"{base}_detail.csv"
        columns = entry.detail(parameters, list(result.axis.values))
        checksums[detail] = export_columns_csv(str(out / detail), columns, parameters)

    columns = [c for c in entry.plot_columns if c in header]
    title = f"{entry.name}: {entry.description}"
    if plot and columns:
        write_plot_script(str(out / f"{base}_plot.py"), entry.name, table, result.axis.key,
                          columns, title)
    if html and columns:
        write_html(str(out / f"{base}.html"), entry.name, header, rows, result.axis.key,
                   columns, title)

    summary = {
        "scenario": entry.name,
        "command": command,
        "version": VERSION,
        "config": {**scenario.to_dict(), "parameters": dict(sorted(parameters.items()))},
        "tables": checksums,
        "metrics": {"n_points": len(result.points), "n_failed": result.n_failed},
        "failures": [{"index": p.index, "value": p.value, "error": p.error}
                     for p in result.points if not p.ok],
    }
    if len(result.points) == 1 and result.points[0].ok:
        summary["metrics"]["point"] = result.points[0].row
    export_summary_json(str(out / f"{base}_summary.json"), summary)
    return summary


def execute(entry: CatalogEntry, scenario: Scenario, axis: SweepAxis) -> SweepResult:
    engine = SweepEngine(entry.point, scenario.parameters, axis, workers=scenario.workers)
    return engine.run()


def cmd_run(args: argparse.Namespace) -> int:
    entry = get_entry(args.scenario)
    scenario = resolve(entry, args)
    axis = SweepAxis(scenario.axis_key, scenario.axis_values)
    result = execute(entry, scenario, axis)
    write_outputs(entry, scenario, result, entry.name, "run", not args.no_plot, args.html)
    if result.n_failed:
        failed = next(p for p in result.points if not p.ok)
        logger.error("[CLI] %d ponto(s) falharam; primeiro %s=%r: %s", result.n_failed,
                     axis.key, failed.value, failed.error)
        return EXIT_NUMERICAL
    logger.info("[CLI] cenário %s concluído em %s", entry.name, scenario.output_dir)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    entry = get_entry(args.scenario)
    scenario = resolve(entry, args)
    axis = SweepAxis.from_spec(args.axis)
    result = execute(entry, scenario, axis)
    write_outputs(entry, scenario, result, f"{entry.name}_sweep", "sweep",
                  not args.no_plot, args.html)
    logger.info("[CLI] varredura %s sobre %s: %d pontos, %d marcados", entry.name, axis.key,
                len(result.points), result.n_failed)
    return EXIT_OK


def cmd_list(args: argparse.Namespace) -> int:
    for name, description in list_scenarios():
        print(f"{name}\t{description}")
    return EXIT_OK


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "list": cmd_list}


def main(argv: Optional[List[str]] = None) -> int:
    """Ponto de entrada; devolve o código de saída."""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        return COMMANDS[args.command](args)
    except ScenarioValidationError as exc:
        logger.error("[CONFIG] configuração inválida (%s): %s", exc.key or "?", exc)
        return exc.exit_code
    except NumericalError as exc:
        logger.error("[CLI] falha numérica: %s", exc)
        return exc.exit_code
    except PyBoundError as exc:
        logger.error("%s", exc)  # já marcada na origem
        return exc.exit_code
