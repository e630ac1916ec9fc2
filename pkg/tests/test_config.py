"""Tests for config loading, overrides and output formatting."""

import json
import math

import pytest

from qlink import config as cfgmod
from qlink.errors import InvalidConfig
from qlink.output import format_value, result_record, to_csv, to_json
from qlink.scenarios import reference_scenario
from qlink.waveguide import AttenuationModel

MINIMAL = """\
[waveguide]
width = 0.05
height = 0.025
length = 5.0

[signal]
frequency = 10e9
input_photons = 320000
"""


@pytest.fixture
def minimal(tmp_path):
    path = tmp_path / "scenario.toml"
    path.write_text(MINIMAL)
    return path


class TestLoad:
    def test_defaults(self, minimal):
        cfg = cfgmod.load(minimal)
        sc = cfg.scenario
        assert sc.waveguide.wall.sigma_ref == 3.8e7
        assert sc.waveguide.temperature == 293.15
        assert sc.antenna is None
        assert sc.attenuation_model is AttenuationModel.TEXTBOOK
        assert cfg.output.format == "json" and cfg.output.path is None

    def test_unknown_key_names_line(self, tmp_path):
        path = tmp_path / "typo.toml"
        path.write_text(MINIMAL.replace("length = 5.0", "length = 5.0\nlenght = 6.0"))
        with pytest.raises(InvalidConfig, match=r"line 5: unknown key waveguide\.lenght"):
            cfgmod.load(path)

    def test_unknown_section(self, tmp_path):
        path = tmp_path / "typo.toml"
        path.write_text(MINIMAL + "\n[antena]\nwidth = 0.01\n")
        with pytest.raises(InvalidConfig, match="antena"):
            cfgmod.load(path)

    def test_missing_required(self, tmp_path):
        path = tmp_path / "short.toml"
        path.write_text(MINIMAL.replace("height = 0.025\n", ""))
        with pytest.raises(InvalidConfig, match="missing required key waveguide.height"):
            cfgmod.load(path)

    def test_type_error_names_line(self, tmp_path):
        path = tmp_path / "bad.toml"
        path.write_text(MINIMAL.replace("frequency = 10e9", 'frequency = "10 GHz"'))
        with pytest.raises(InvalidConfig, match=r"line 7: signal\.frequency must be a number"):
            cfgmod.load(path)

    def test_module_invariants_revalidated(self, tmp_path):
        path = tmp_path / "neg.toml"
        path.write_text(MINIMAL.replace("length = 5.0", "length = -1.0"))
        with pytest.raises(InvalidConfig, match="length"):
            cfgmod.load(path)

    def test_bad_attenuation_model(self, minimal):
        with pytest.raises(InvalidConfig, match="attenuation_model"):
            cfgmod.load(minimal, ['attenuation_model="exact"'])

    def test_syntax_error(self, tmp_path):
        path = tmp_path / "broken.toml"
        path.write_text("[waveguide\nwidth = 1")
        with pytest.raises(InvalidConfig):
            cfgmod.load(path)


class TestOverrides:
    def test_numeric_and_nested(self, minimal):
        cfg = cfgmod.load(minimal, ["waveguide.length=10", "waveguide.wall.conductivity=5.8e7"])
        assert cfg.scenario.waveguide.length == 10.0
        assert cfg.scenario.waveguide.wall.sigma_ref == 5.8e7

    def test_adds_section(self, minimal):
        cfg = cfgmod.load(minimal, ["antenna.width=0.01", "antenna.height=0.005",
                                    "antenna.capacitance=1e-12"])
        assert cfg.scenario.antenna.width == 0.01

    def test_bare_string(self, minimal):
        cfg = cfgmod.load(minimal, ["output.format=csv"])
        assert cfg.output.format == "csv"

    def test_infinite_budget(self, minimal):
        cfg = cfgmod.load(minimal, ["constraint.max_noise_photons=inf",
                                    "constraint.min_signal_photons=1",
                                    "constraint.max_input_photons=1e6"])
        assert math.isinf(cfg.constraint().max_noise_photons)

    def test_malformed(self, minimal):
        with pytest.raises(InvalidConfig):
            cfgmod.load(minimal, ["waveguide.length"])
        with pytest.raises(InvalidConfig):
            cfgmod.load(minimal, ["waveguide..length=1"])


class TestRoundTrip:
    def test_echo_reparses_to_same_scenario(self, minimal):
        cfg = cfgmod.load(minimal, ["waveguide.temperature=78"])
        again = cfgmod.load_dict(cfg.echo())
        assert again.scenario == cfg.scenario
        assert again.echo() == cfg.echo()

    def test_json_record_inputs(self, tmp_path):
        sc = reference_scenario()
        cfg = cfgmod.load_dict(cfgmod.scenario_sections(sc))
        record = result_record("link-budget", cfg.echo(), {}, {})
        path = tmp_path / "record.json"
        path.write_text(to_json(record))
        assert cfgmod.load(path).scenario == sc

    def test_toml_writer(self, tmp_path):
        sc = reference_scenario()
        raw = cfgmod.scenario_sections(sc)
        raw["constraint"] = {"max_noise_photons": math.inf, "min_signal_photons": 35.0,
                             "max_input_photons": 32e4}
        path = tmp_path / "written.toml"
        path.write_text(cfgmod.to_toml(raw))
        cfg = cfgmod.load(path)
        assert cfg.scenario == sc
        assert math.isinf(cfg.constraint().max_noise_photons)

    def test_shipped_configs_load(self):
        from pathlib import Path

        root = Path(__file__).resolve().parent.parent / "configs"
        ref = cfgmod.load(root / "reference.toml")
        assert ref.scenario == reference_scenario()
        for path in root.glob("*.toml"):
            cfgmod.load(path)


class TestOutput:
    def test_format_value(self):
        assert format_value(0.1) == "0.1"
        assert format_value(math.inf) == "inf"
        assert format_value(-math.inf) == "-inf"
        assert format_value(None) == ""
        assert format_value(3) == "3"
        assert float(format_value(1 / 3)) == 1 / 3

    def test_csv_layout(self):
        text = to_csv(("a", "b"), [{"a": 1.5, "b": "x,y"}, {"a": math.inf}])
        assert text == 'a,b\n1.5,"x,y"\ninf,\n'
        assert "\r" not in text

    def test_json_is_strict(self):
        text = to_json(result_record("x", {}, {"snr_db": math.inf}, {"seed": None}))
        doc = json.loads(text)
        assert doc["schema_version"] == "1"
        assert doc["outputs"]["snr_db"] == "inf"
        assert text.endswith("\n")
