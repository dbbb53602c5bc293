"""
PyBound - Motor de Varreduras de Parâmetros
Executa um cenário ponto a ponto ao longo de um eixo, em paralelo, com
agregação na ordem do eixo e falhas por ponto registradas como linhas
marcadas.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from .errors import PyBoundError, ScenarioValidationError

logger = logging.getLogger(__name__)

MAX_WORKERS = 64

PointFunction = Callable[[Dict[str, Any]], Dict[str, Any]]


@dataclass
class SweepAxis:
    """Eixo de varredura sobre uma chave declarada do cenário."""
    key: str
    values: List[float] = field(default_factory=list)

    def validate(self) -> Tuple[bool, str]:
        """
        Returns:
            Tuple[bool, str]: (é_válido, mensagem_erro)
        """
        if not self.key:
            return False, "Eixo sem chave."
        if not self.values:
            return False, f"Eixo {self.key!r} sem valores."
        if not all(math.isfinite(v) for v in self.values):
            return False, f"Eixo {self.key!r} com valores não finitos."
        steps = np.diff(self.values)
        if steps.size and not (np.all(steps > 0) or np.all(steps < 0)):
            return False, f"Eixo {self.key!r} não monótono."
        return True, ""

    @classmethod
    def from_spec(cls, spec: str) -> "SweepAxis":
        """
        Interpreta "chave=início:fim:n" (n pontos inclusive) ou "chave=v1,v2,...".
        """
        key, sep, body = spec.partition("=")
        key = key.strip()
        if not sep or not key or not body.strip():
            raise ScenarioValidationError(f"eixo inválido: {spec!r} (use chave=início:fim:n)",
                                          key="axis")
        try:
            if ":" in body:
                start, stop, num = body.split(":")
                count = int(num)
                if count < 1:
                    raise ValueError(num)
                values = np.linspace(float(start), float(stop), count).tolist()
            else:
                values = [float(v) for v in body.split(",")]
        except ValueError as exc:
            raise ScenarioValidationError(f"eixo inválido: {spec!r}", key=key) from exc
        return cls(key=key, values=values)


@dataclass
class SweepPoint:
    """Resultado de um ponto: valores da linha ou mensagem de falha."""
    index: int
    value: float
    ok: bool
    row: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None


@dataclass
class SweepResult:
    """Tabela agregada na ordem do eixo."""
    axis: SweepAxis
    points: List[SweepPoint]

    @property
    def n_failed(self) -> int:
        return sum(1 for p in self.points if not p.ok)

    def header(self) -> List[str]:
        names = [self.axis.key]
        for point in self.points:
            for name in point.row:
                if name not in names:
                    names.append(name)
        return names + ["ok", "error"]

    def rows(self) -> List[List[Any]]:
        header = self.header()
        table = []
        for point in self.points:
            values = dict(point.row)
            values[self.axis.key] = point.value
            values["ok"] = point.ok
            values["error"] = point.error or ""
            table.append([values.get(name, float("nan")) for name in header])
        return table

    def column(self, name: str) -> np.ndarray:
        index = self.header().index(name)
        return np.array([row[index] for row in self.rows()])


def evaluate_point(point_fn: PointFunction, index: int, key: str, value: float,
                   parameters: Dict[str, Any]) -> SweepPoint:
    """Avalia um ponto isolado; erros numéricos e de validação viram linha marcada."""
    config = dict(parameters)
    config[key] = value
    try:
        row = point_fn(config)
    except (PyBoundError, ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
        message = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        return SweepPoint(index=index, value=value, ok=False,
                          error=f"{type(exc).__name__}: {message}")
    return SweepPoint(index=index, value=value, ok=True, row=row)


class SweepEngine:
    """
    Varredura paralela de um cenário ao longo de um eixo.

    Cada ponto é uma tarefa pura e isolada; com workers > 1 usa um pool de
    processos e reordena os resultados pelo índice do eixo.
    """

    def __init__(self, point_fn: PointFunction, parameters: Dict[str, Any],
                 axis: SweepAxis, workers: int = 1):
        self.point_fn = point_fn
        self.parameters = parameters
        self.axis = axis
        self.workers = workers
        self._validate()

    def _validate(self):
        errors = []
        if not isinstance(self.workers, int) or self.workers < 1:
            errors.append(f"workers deve ser ≥ 1 (recebido {self.workers!r}).")
        elif self.workers > MAX_WORKERS:
            errors.append(f"workers deve ser ≤ {MAX_WORKERS}.")
        is_valid, message = self.axis.validate()
        if not is_valid:
            errors.append(message)
        if self.axis.key not in self.parameters or self.axis.key.startswith("axis."):
            errors.append(f"eixo sobre chave desconhecida: {self.axis.key!r}")
        if errors:
            raise ScenarioValidationError("\n".join(errors), key="axis")

    def run(self) -> SweepResult:
        """
        Executa todos os pontos.

        Returns:
            SweepResult com uma linha por valor do eixo, na ordem do eixo
        """
        tasks = list(enumerate(self.axis.values))
        logger.info("[SWEEP] %s: %d pontos, %d worker(s)", self.axis.key, len(tasks), self.workers)
        if self.workers == 1 or len(tasks) == 1:
            points = [evaluate_point(self.point_fn, i, self.axis.key, v, self.parameters)
                      for i, v in tasks]
        else:
            points = []
            with ProcessPoolExecutor(max_workers=min(self.workers, len(tasks))) as executor:
                futures = [executor.submit(evaluate_point, self.point_fn, i, self.axis.key, v,
                                           self.parameters) for i, v in tasks]
                for future in as_completed(futures):
                    point = future.result()
                    logger.debug("[SWEEP] ponto %d concluído (ok=%s)", point.index, point.ok)
                    points.append(point)
            points.sort(key=lambda p: p.index)

        result = SweepResult(axis=self.axis, points=points)
        for point in points:
            if not point.ok:
                logger.warning("[SWEEP] %s=%r falhou: %s", self.axis.key, point.value, point.error)
        return result
