"""Testes de configuração, resolução de cenários e exportação."""

import hashlib
import json
import math

import numpy as np
import pytest

from core.errors import ConfigParseError, ScenarioValidationError
from core.export import (
    export_columns_csv,
    export_summary_json,
    export_table_csv,
    format_value,
)
from core.scenario import (
    OUTPUT_DIR_ENV,
    Scenario,
    build_scenario,
    load_scenario,
    parse_config_text,
    read_config,
    resolve_parameters,
    save_scenario,
)

DEFAULTS = {
    "spectral_density.eta": 0.1,
    "grid.n": 10,
    "ribbon.enabled": False,
    "thermal.n0_values": [0.0, 5.0],
    "axis.key": "spectral_density.eta",
    "axis.values": [0.1, 0.2],
}


# =============================================================================
# LEITURA
# =============================================================================

@pytest.mark.parametrize("text", ["", "   \n", "{not json", "[1, 2]"])
def test_unreadable_config_text(text: str) -> None:
    with pytest.raises(ConfigParseError):
        parse_config_text(text)


def test_read_config_missing_file(tmp_path) -> None:
    with pytest.raises(ConfigParseError) as info:
        read_config(str(tmp_path / "ausente.json"))
    assert info.value.exit_code == 2


def test_read_config_returns_flat_keys(tmp_path) -> None:
    path = tmp_path / "config.json"
    path.write_text('{"spectral_density.eta": 0.15}', encoding="utf-8")
    assert read_config(str(path)) == {"spectral_density.eta": 0.15}


# =============================================================================
# RESOLUÇÃO
# =============================================================================

def test_unknown_key_names_the_key() -> None:
    with pytest.raises(ScenarioValidationError) as info:
        resolve_parameters(DEFAULTS, {"spectral_density.etta": 0.2})
    assert info.value.key == "spectral_density.etta"
    assert info.value.exit_code == 3


def test_values_are_coerced_to_default_types() -> None:
    resolved = resolve_parameters(DEFAULTS, {"grid.n": 12.0, "spectral_density.eta": 1})
    assert resolved["grid.n"] == 12 and isinstance(resolved["grid.n"], int)
    assert isinstance(resolved["spectral_density.eta"], float)


@pytest.mark.parametrize("key, value", [
    ("grid.n", 2.5),
    ("ribbon.enabled", 1),
    ("spectral_density.eta", "0.1"),
    ("spectral_density.eta", True),
    ("thermal.n0_values", [0.0, 5.0, 1.0]),
    ("thermal.n0_values", []),
])
def test_invalid_values_are_rejected(key: str, value) -> None:
    with pytest.raises(ScenarioValidationError) as info:
        resolve_parameters(DEFAULTS, {key: value})
    assert info.value.key == key


def test_axis_override() -> None:
    resolved = resolve_parameters(DEFAULTS, {"axis.values": [0.3, 0.2, 0.1]})
    assert resolved["axis.values"] == [0.3, 0.2, 0.1]
    with pytest.raises(ScenarioValidationError) as info:
        resolve_parameters(DEFAULTS, {"axis.key": "omega9"})
    assert info.value.key == "axis.key"


def test_build_scenario_output_dir_precedence(monkeypatch) -> None:
    monkeypatch.setenv(OUTPUT_DIR_ENV, "/tmp/env_out")
    assert build_scenario("demo", DEFAULTS, {}).output_dir == "/tmp/env_out"
    assert build_scenario("demo", DEFAULTS, {"output_dir": "cfg"}).output_dir == "cfg"
    assert build_scenario("demo", DEFAULTS, {"output_dir": "cfg"}, output_dir="flag").output_dir == "flag"


@pytest.mark.parametrize("workers", [0, -2])
def test_build_scenario_rejects_workers(workers: int) -> None:
    with pytest.raises(ScenarioValidationError):
        build_scenario("demo", DEFAULTS, {}, workers=workers)


def test_units_reference_must_match() -> None:
    with pytest.raises(ScenarioValidationError) as info:
        build_scenario("demo", DEFAULTS, {"units.reference": "omega0"}, units="omega_c")
    assert info.value.key == "units.reference"


def test_save_and_load_scenario(tmp_path) -> None:
    scenario = build_scenario("demo", DEFAULTS, {"grid.n": 20}, output_dir="out", workers=2)
    ok, error = save_scenario(str(tmp_path / "demo"), scenario)
    assert ok and error is None
    loaded, error = load_scenario(str(tmp_path / "demo.json"))
    assert error is None
    assert loaded.to_dict() == scenario.to_dict()


def test_load_scenario_rejects_other_major_version(tmp_path) -> None:
    path = tmp_path / "old.json"
    data = Scenario(name="demo", output_dir="out").to_dict()
    data["metadata"]["version"] = "0.9.0"
    path.write_text(json.dumps(data), encoding="utf-8")
    loaded, error = load_scenario(str(path))
    assert loaded is None
    assert "0.9.0" in error


# =============================================================================
# EXPORTAÇÃO
# =============================================================================

@pytest.mark.parametrize("value, text", [
    (0.1, "0.1"),
    (np.float64(1e-20), "1e-20"),
    (3, "3"),
    (True, "true"),
    (np.bool_(False), "false"),
    (float("nan"), "nan"),
    (None, "nan"),
    (math.inf, "inf"),
    ("fbs", "fbs"),
])
def test_format_value(value, text: str) -> None:
    assert format_value(value) == text


def test_format_value_rejects_complex() -> None:
    with pytest.raises(TypeError):
        format_value(1 + 2j)


def test_export_table_csv_layout_and_checksum(tmp_path) -> None:
    path = tmp_path / "table.csv"
    checksum = export_table_csv(str(path), ["eta", "Z"], [[0.1, float("nan")], [0.2, 0.75]],
                                {"omega0": 0.1, "axis.values": [0.1, 0.2]})
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines == ["# axis.values=[0.1, 0.2] omega0=0.1", "eta,Z", "0.1,nan", "0.2,0.75"]
    assert checksum == hashlib.sha256(path.read_bytes()).hexdigest()


def test_export_columns_requires_equal_lengths(tmp_path) -> None:
    with pytest.raises(ValueError):
        export_columns_csv(str(tmp_path / "x.csv"), {"t": np.arange(3), "u": np.arange(4)})


def test_export_summary_json_is_sorted(tmp_path) -> None:
    path = tmp_path / "summary.json"
    export_summary_json(str(path), {"b": np.float64(float("nan")), "a": np.int64(2),
                                    "c": {"ok": np.bool_(True)}})
    text = path.read_text(encoding="utf-8")
    assert text.index('"a"') < text.index('"b"') < text.index('"c"')
    assert json.loads(text) == {"a": 2, "b": "nan", "c": {"ok": True}}
