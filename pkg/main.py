#!/usr/bin/env python3
"""
PyBound - Estados Ligados e Engenharia Floquet
==============================================

Biblioteca numérica e linha de comando para dinâmica não-Markoviana
governada por estados ligados sistema-ambiente, sistemas acionados
periodicamente e fases topológicas de Floquet.

Uso:
    python main.py list
    python main.py run fig2-qsl --out resultados
    python main.py sweep fig9-nhssh --axis drive.f=0.25:3:12 --workers 4

Versão: 1.0.0
"""

import sys

from cli.app import main


if __name__ == "__main__":
    sys.exit(main())
