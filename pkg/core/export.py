"""
PyBound - Módulo de Exportação
Tabelas CSV byte-estáveis e resumo JSON com checksums.
"""

import csv
import hashlib
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


def format_value(value: Any) -> str:
    """
    Texto de uma célula: floats em repr (menor representação exata),
    booleanos true/false, ausentes e não finitos como nan/inf.
    """
    if value is None:
        return "nan"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        return repr(value)
    if isinstance(value, (complex, np.complexfloating)):
        raise TypeError("Valores complexos devem ser separados em partes real e imaginária.")
    return str(value)


def rows_from_columns(columns: Mapping[str, Sequence]) -> Tuple[List[str], List[List[Any]]]:
    """Converte {coluna: array} em (cabeçalho, linhas), exigindo mesmo comprimento."""
    header = list(columns)
    arrays = [np.asarray(columns[name]) for name in header]
    lengths = {a.shape[0] if a.ndim else 1 for a in arrays}
    if len(lengths) > 1:
        raise ValueError(f"Colunas com comprimentos diferentes: {sorted(lengths)}")
    arrays = [a if a.ndim else a.reshape(1) for a in arrays]
    n_rows = lengths.pop() if lengths else 0
    return header, [[a[i].item() for a in arrays] for i in range(n_rows)]


def sha256_of(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def export_table_csv(filepath: str, header: Sequence[str], rows: Iterable[Sequence[Any]],
                     parameters: Optional[Dict[str, Any]] = None) -> str:
    """
    Escreve a tabela em CSV UTF-8 com vírgula e uma linha de comentário
    inicial ecoando os parâmetros.

    Returns:
        sha256 do arquivo escrito
    """
    path = Path(filepath)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        if parameters:
            echo = " ".join(f"{k}={format_value(v) if not isinstance(v, list) else json.dumps(v)}"
                            for k, v in sorted(parameters.items()))
            f.write(f"# {echo}\n")
        writer = csv.writer(f, delimiter=",", lineterminator="\n")
        writer.writerow(header)
        count = 0
        for row in rows:
            writer.writerow([format_value(v) for v in row])
            count += 1
    checksum = sha256_of(path)
    logger.info("[EXPORT] %s (%d linhas, sha256 %s…)", path.name, count, checksum[:12])
    return checksum


def export_columns_csv(filepath: str, columns: Mapping[str, Sequence],
                       parameters: Optional[Dict[str, Any]] = None) -> str:
    header, rows = rows_from_columns(columns)
    return export_table_csv(filepath, header, rows, parameters)


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else format_value(value)
    return value


def export_summary_json(filepath: str, summary: Dict[str, Any]) -> None:
    """Resumo com chaves ordenadas e sem carimbo de tempo."""
    path = Path(filepath)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(_jsonable(summary), f, ensure_ascii=False, indent=2, sort_keys=True)
        f.write("\n")
    logger.info("[EXPORT] %s", path.name)
