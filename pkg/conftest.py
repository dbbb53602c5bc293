"""Configuração do pytest para o PyBound."""


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: execuções de escala de bancada (minutos); desative com -m 'not slow'"
    )
