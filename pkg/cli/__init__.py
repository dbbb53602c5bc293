"""Interface de linha de comando do PyBound."""
from .app import main

__all__ = ["main"]
