"""
PyBound - Hierarquia de Exceções
Erros de configuração, validação e falhas numéricas com código de saída da CLI.
"""

from typing import Optional


class PyBoundError(Exception):
    """Erro base do PyBound."""
    exit_code = 1


class ConfigParseError(PyBoundError):
    """Arquivo de configuração ilegível (vazio, JSON inválido, topo não-objeto)."""
    exit_code = 2


class ScenarioValidationError(PyBoundError, ValueError):
    """Parâmetro de cenário inválido. Carrega a chave ofensora quando conhecida."""
    exit_code = 3

    def __init__(self, message: str, key: Optional[str] = None):
        super().__init__(message)
        self.key = key


class NumericalError(PyBoundError, RuntimeError):
    """Falha numérica em uma operação do motor."""
    exit_code = 4


class QuadratureError(NumericalError):
    """Quadratura não convergiu; informa a estimativa de erro obtida."""

    def __init__(self, message: str, error_estimate: float = float("nan")):
        super().__init__(f"{message} (erro estimado: {error_estimate:.3e})")
        self.error_estimate = error_estimate


class RootBracketError(NumericalError):
    """Não foi possível isolar a raiz da condição de estado ligado."""


class StepSizeError(NumericalError):
    """Passo de tempo incompatível com a frequência do sistema."""


class KernelError(NumericalError):
    """Avaliação do núcleo de memória falhou."""


class SurfacePlasmonPole(NumericalError):
    """Ressonância de plasmon de superfície: ε_m(ω) + ε_d = 0."""

    def __init__(self, omega: float):
        super().__init__(f"Polo de plasmon de superfície em ω = {omega!r}")
        self.omega = omega


class GaplessError(NumericalError):
    """Ponto sem gap: invariante topológico indefinido."""

    def __init__(self, message: str, gap: float = 0.0, where: Optional[object] = None):
        super().__init__(f"{message} (gap mínimo: {gap:.3e})")
        self.gap = gap
        self.where = where


class NonUnitaryError(NumericalError):
    """Propagador de um período não é unitário no pipeline hermitiano."""


class DimensionError(NumericalError):
    """Dimensão do setor acima do limite configurado."""
