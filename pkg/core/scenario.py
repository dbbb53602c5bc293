"""
PyBound - Módulo de Configuração e Persistência de Cenários
Lê configurações JSON com chaves planas pontuadas, resolve contra os
padrões do catálogo e salva/carrega cenários resolvidos.
"""

import json
import logging
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .errors import ConfigParseError, ScenarioValidationError

logger = logging.getLogger(__name__)

VERSION = "1.0.0"
OUTPUT_DIR_ENV = "PYBOUND_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "pybound_out"

# Chaves aceitas por qualquer cenário, fora dos padrões do catálogo
RESERVED_KEYS = ("output_dir", "workers", "units.reference", "axis.key", "axis.values")


def default_output_dir() -> str:
    """Diretório de saída: PYBOUND_OUTPUT_DIR ou ./pybound_out."""
    return os.environ.get(OUTPUT_DIR_ENV) or DEFAULT_OUTPUT_DIR


# =============================================================================
# LEITURA DA CONFIGURAÇÃO
# =============================================================================

def parse_config_text(text: str, source: str = "<config>") -> Dict[str, Any]:
    """
    Interpreta o texto da configuração.

    Raises:
        ConfigParseError: texto vazio, JSON inválido ou raiz que não é objeto.
    """
    if not text.strip():
        raise ConfigParseError(f"[CONFIG] {source}: configuração vazia.")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"[CONFIG] {source}: JSON inválido na linha {exc.lineno}, "
                               f"coluna {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ConfigParseError(f"[CONFIG] {source}: a raiz deve ser um objeto, "
                               f"não {type(data).__name__}.")
    return data


def read_config(filepath: str) -> Dict[str, Any]:
    """Lê e interpreta um arquivo de configuração."""
    path = Path(filepath)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise ConfigParseError(f"[CONFIG] arquivo não encontrado: {path}") from exc
    except UnicodeDecodeError as exc:
        raise ConfigParseError(f"[CONFIG] {path}: codificação não é UTF-8.") from exc
    return parse_config_text(text, str(path))


# =============================================================================
# VALIDAÇÃO DE VALORES
# =============================================================================

def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def check_grid(key: str, values: Any) -> List[float]:
    """Malha não vazia, numérica, finita e estritamente monótona."""
    if not isinstance(values, list) or not values:
        raise ScenarioValidationError(f"{key}: malha deve ser lista não vazia.", key=key)
    if not all(_is_number(v) and math.isfinite(v) for v in values):
        raise ScenarioValidationError(f"{key}: malha com valor não numérico ou não finito.", key=key)
    steps = [b - a for a, b in zip(values, values[1:])]
    if steps and not (all(s > 0 for s in steps) or all(s < 0 for s in steps)):
        raise ScenarioValidationError(f"{key}: malha não monótona.", key=key)
    return [float(v) for v in values]


def coerce_value(key: str, value: Any, default: Any) -> Any:
    """Converte value para o tipo do padrão; rejeita tipos incompatíveis."""
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ScenarioValidationError(f"{key}: esperado booleano, recebido {value!r}.", key=key)
        return value
    if isinstance(default, int):
        if _is_number(value) and float(value).is_integer():
            return int(value)
        raise ScenarioValidationError(f"{key}: esperado inteiro, recebido {value!r}.", key=key)
    if isinstance(default, float):
        if not _is_number(value) or not math.isfinite(value):
            raise ScenarioValidationError(f"{key}: esperado número finito, recebido {value!r}.",
                                          key=key)
        return float(value)
    if isinstance(default, list):
        return check_grid(key, value)
    if isinstance(default, str):
        if not isinstance(value, str):
            raise ScenarioValidationError(f"{key}: esperado texto, recebido {value!r}.", key=key)
        return value
    return value


def resolve_parameters(defaults: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """
    Aplica as chaves do usuário sobre os padrões do cenário.

    Raises:
        ScenarioValidationError: chave desconhecida ou valor inválido
    """
    resolved = dict(defaults)
    for key in sorted(overrides):
        if key in RESERVED_KEYS:
            continue
        if key not in defaults:
            raise ScenarioValidationError(f"chave desconhecida: {key!r}", key=key)
        resolved[key] = coerce_value(key, overrides[key], defaults[key])
    axis_key = overrides.get("axis.key", defaults.get("axis.key"))
    if axis_key is not None:
        if not isinstance(axis_key, str) or axis_key not in defaults or axis_key.startswith("axis."):
            raise ScenarioValidationError(f"eixo sobre chave desconhecida: {axis_key!r}",
                                          key="axis.key")
        resolved["axis.key"] = axis_key
        resolved["axis.values"] = check_grid("axis.values",
                                             overrides.get("axis.values", defaults.get("axis.values")))
    return resolved


# =============================================================================
# CENÁRIO RESOLVIDO
# =============================================================================

@dataclass
class Scenario:
    """Cenário resolvido: parâmetros completos, saída, workers e unidades."""
    name: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    output_dir: str = ""
    workers: int = 1
    units: str = "omega_c"
    version: str = VERSION

    def __post_init__(self):
        if not self.output_dir:
            self.output_dir = default_output_dir()

    def validate_all(self) -> Tuple[bool, List[str]]:
        errors = []
        if not self.name:
            errors.append("Nome do cenário vazio.")
        if not isinstance(self.workers, int) or isinstance(self.workers, bool) or self.workers < 1:
            errors.append(f"workers deve ser inteiro ≥ 1 (recebido {self.workers!r}).")
        if "axis.key" in self.parameters and not self.parameters.get("axis.values"):
            errors.append("Eixo sem valores.")
        return len(errors) == 0, errors

    @property
    def axis_key(self) -> Optional[str]:
        return self.parameters.get("axis.key")

    @property
    def axis_values(self) -> List[float]:
        return list(self.parameters.get("axis.values", []))

    def to_dict(self) -> dict:
        """Converte para dicionário JSON-serializável (sem carimbo de tempo)."""
        return {
            "metadata": {"name": self.name, "version": self.version},
            "parameters": dict(sorted(self.parameters.items())),
            "output_dir": self.output_dir,
            "workers": self.workers,
            "units.reference": self.units,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        metadata = data.get("metadata", {})
        return cls(
            name=metadata.get("name", ""),
            parameters=dict(data.get("parameters", {})),
            output_dir=data.get("output_dir", ""),
            workers=data.get("workers", 1),
            units=data.get("units.reference", "omega_c"),
            version=metadata.get("version", VERSION),
        )


def build_scenario(name: str, defaults: Dict[str, Any], overrides: Dict[str, Any],
                   output_dir: Optional[str] = None, workers: Optional[int] = None,
                   units: str = "omega_c") -> Scenario:
    """
    Resolve um cenário do catálogo com as chaves do usuário.

    Flags da linha de comando prevalecem sobre as chaves output_dir/workers.
    """
    parameters = resolve_parameters(defaults, overrides)
    if "units.reference" in overrides and overrides["units.reference"] != units:
        raise ScenarioValidationError(
            f"units.reference: cenário declarado em {units!r}, recebido "
            f"{overrides['units.reference']!r}.", key="units.reference")
    if workers is None:
        workers = overrides.get("workers", 1)
    scenario = Scenario(
        name=name,
        parameters=parameters,
        output_dir=output_dir or overrides.get("output_dir") or default_output_dir(),
        workers=workers,
        units=units,
    )
    is_valid, errors = scenario.validate_all()
    if not is_valid:
        raise ScenarioValidationError("\n".join(errors), key="workers")
    logger.debug("[CONFIG] cenário %s resolvido com %d chaves", name, len(parameters))
    return scenario


# =============================================================================
# PERSISTÊNCIA
# =============================================================================

def save_scenario(filepath: str, scenario: Scenario) -> Tuple[bool, Optional[str]]:
    """
    Salva o cenário resolvido (JSON).

    Returns:
        Tuple (sucesso, mensagem_erro)
    """
    try:
        path = Path(filepath)
        if path.suffix.lower() != ".json":
            path = path.with_suffix(".json")
        with open(path, "w", encoding="utf-8") as f:
            json.dump(scenario.to_dict(), f, ensure_ascii=False, indent=2, sort_keys=True)
        return True, None
    except PermissionError:
        return False, "Permissão negada para salvar o arquivo."
    except OSError as e:
        return False, f"Erro ao salvar: {e}"


def load_scenario(filepath: str) -> Tuple[Optional[Scenario], Optional[str]]:
    """
    Carrega um cenário salvo.

    Returns:
        Tuple (cenário, mensagem_erro)
    """
    try:
        path = Path(filepath)
        if not path.exists():
            return None, "Arquivo não encontrado."
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        version = data.get("metadata", {}).get("version", "1.0")
        if version.split(".")[0] != VERSION.split(".")[0]:
            return None, f"Versão do arquivo não suportada: {version}"
        return Scenario.from_dict(data), None
    except json.JSONDecodeError:
        return None, "Arquivo inválido (não é JSON válido)."
    except (OSError, AttributeError) as e:
        return None, f"Erro ao carregar: {e}"
