"""Scenario configuration files.

Configs are TOML (or JSON, e.g. the ``inputs`` echo of a result record).
Every section has a fixed set of keys; unknown keys are rejected so that a
mistyped physical constant fails loudly instead of silently using a default.
Units are SI with frequencies in Hz, lengths in m and temperatures in K.

Example::

    attenuation_model = "textbook"

    [waveguide]
    width = 0.05
    height = 0.025
    length = 5.0
    temperature = 293.15

    [waveguide.wall]
    name = "aluminium"
    conductivity = 3.8e7

    [signal]
    frequency = 10e9
    input_photons = 320000

    [antenna]
    width = 0.009
    height = 0.0045
    capacitance = 1e-12
"""

from __future__ import annotations

import copy
import json
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .design import DesignConstraint, Scenario, SweepSpec
from .errors import InvalidConfig
from .link import SignalSpec
from .receiver import AntennaSpec
from .waveguide import AttenuationModel, ConductorModel, WaveguideSpec

REQUIRED = object()

# section -> key -> (kind, default)
SCHEMA: dict[str, dict[str, tuple[str, Any]]] = {
    "waveguide": {
        "width": ("float", REQUIRED),
        "height": ("float", REQUIRED),
        "length": ("float", REQUIRED),
        "eps_r": ("float", 1.0),
        "mu_r": ("float", 1.0),
        "temperature": ("float", 293.15),
    },
    "waveguide.wall": {
        "name": ("str", "aluminium"),
        "conductivity": ("float", 3.8e7),
        "cryo_factor": ("float", 5.0),
        "knee_temperature": ("float", 78.0),
        "reference_temperature": ("float", 293.0),
    },
    "signal": {
        "frequency": ("float", REQUIRED),
        "input_photons": ("float", REQUIRED),
    },
    "antenna": {
        "width": ("float", REQUIRED),
        "height": ("float", REQUIRED),
        "capacitance": ("float", REQUIRED),
        "mu_r": ("float", None),
    },
    "output": {
        "format": ("str", "json"),
        "path": ("str", None),
    },
    "sweep": {
        "variable": ("str", REQUIRED),
        "start": ("float", REQUIRED),
        "stop": ("float", REQUIRED),
        "n_points": ("int", REQUIRED),
        "spacing": ("str", "linear"),
        "h_ratio": ("float", 0.5),
    },
    "constraint": {
        "max_noise_photons": ("float", REQUIRED),
        "min_signal_photons": ("float", REQUIRED),
        "max_input_photons": ("float", REQUIRED),
    },
    "design": {
        "h_ratio": ("float", 0.5),
        "cooling_temperature": ("float", None),
    },
    "mc": {
        "seed": ("int", 42),
        "n_trajectories": ("int", 10_000),
        "n_steps": ("int", None),
        "euler_step_decay": ("float", 0.002),
        "gamma_t": ("floats", [0.05, 0.5, 2.0, 5.0]),
        "n_th": ("floats", [0.0, 1.0, 610.3]),
        "initial_photons": ("floats", [0.0, 1.0, 1e4]),
    },
    "mc.convergence": {
        "gamma_t": ("float", 2.0),
        "n_th": ("float", 610.3),
        "initial_photons": ("float", 0.0),
        "schedule": ("ints", [100, 1000, 10_000]),
    },
}
TOP_LEVEL = {"attenuation_model": ("str", "textbook")}
SECTION_ORDER = list(SCHEMA)


@dataclass(frozen=True)
class OutputSpec:
    format: str = "json"
    path: Optional[str] = None

    def __post_init__(self) -> None:
        if self.format not in ("csv", "json"):
            raise InvalidConfig(f"output.format must be 'csv' or 'json', got {self.format!r}")


@dataclass(frozen=True)
class Config:
    """A validated configuration.

    ``sections`` holds the normalized raw values (defaults filled in) of
    every section present, which is what result records echo back.
    """

    scenario: Optional[Scenario]
    output: OutputSpec
    sections: dict = field(compare=False)

    def section(self, name: str) -> dict:
        if name not in self.sections:
            raise InvalidConfig(f"missing [{name}] section")
        return self.sections[name]

    def sweep_spec(self) -> SweepSpec:
        s = self.section("sweep")
        return SweepSpec(
            variable=_enum_value("sweep.variable", s["variable"],
                                 ("length", "frequency", "antenna_width", "temperature")),
            start=s["start"],
            stop=s["stop"],
            n_points=s["n_points"],
            scenario=self.require_scenario(),
            spacing=s["spacing"],
            h_ratio=s["h_ratio"],
        )

    def constraint(self) -> DesignConstraint:
        s = self.section("constraint")
        return DesignConstraint(s["max_noise_photons"], s["min_signal_photons"], s["max_input_photons"])

    def require_scenario(self) -> Scenario:
        if self.scenario is None:
            raise InvalidConfig("config needs [waveguide] and [signal] sections")
        return self.scenario

    def echo(self) -> dict:
        """Inputs as plain data; ``load_dict(cfg.echo())`` rebuilds an equal config."""
        out: dict[str, Any] = {"attenuation_model": self.sections["attenuation_model"]}
        for name in SECTION_ORDER:
            if name not in self.sections:
                continue
            parent, _, child = name.partition(".")
            table = copy.deepcopy(self.sections[name])
            if child:
                out[parent][child] = table
            else:
                out[parent] = table
        return out


def _enum_value(path: str, value: str, allowed: tuple[str, ...]) -> str:
    if value not in allowed:
        raise InvalidConfig(f"{path} must be one of {', '.join(allowed)}; got {value!r}")
    return value


def _coerce(path: str, kind: str, value: Any) -> Any:
    if value is None:
        return None
    if kind == "float":
        if isinstance(value, str) and value in ("inf", "+inf", "-inf", "nan"):
            return float(value)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise InvalidConfig(f"{path} must be a number, got {value!r}")
        return float(value)
    if kind == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            if isinstance(value, float) and value.is_integer():
                return int(value)
            raise InvalidConfig(f"{path} must be an integer, got {value!r}")
        return value
    if kind == "str":
        if not isinstance(value, str):
            raise InvalidConfig(f"{path} must be a string, got {value!r}")
        return value
    if kind in ("floats", "ints"):
        if not isinstance(value, list) or not value:
            raise InvalidConfig(f"{path} must be a non-empty list, got {value!r}")
        item = kind[:-1]
        return [_coerce(f"{path}[{i}]", item, v) for i, v in enumerate(value)]
    raise AssertionError(kind)


def _split_sections(raw: dict) -> dict[str, dict]:
    """Flatten nested tables to dotted section names, rejecting unknown keys."""
    if not isinstance(raw, dict):
        raise InvalidConfig("config must be a table of sections")
    found: dict[str, Any] = {}
    for key, value in raw.items():
        if key in TOP_LEVEL:
            found[key] = value
            continue
        if key not in SCHEMA or not isinstance(value, dict):
            raise InvalidConfig(f"unknown top-level key {key!r}")
        table = dict(value)
        for sub in [k for k in table if f"{key}.{k}" in SCHEMA]:
            if not isinstance(table[sub], dict):
                raise InvalidConfig(f"{key}.{sub} must be a table")
            found[f"{key}.{sub}"] = table.pop(sub)
        found[key] = table
    return found


def _validate_section(name: str, table: dict) -> dict:
    spec = SCHEMA[name]
    for key in table:
        if key not in spec:
            raise InvalidConfig(f"unknown key {name}.{key}")
    out = {}
    for key, (kind, default) in spec.items():
        if key in table:
            out[key] = _coerce(f"{name}.{key}", kind, table[key])
        elif default is REQUIRED:
            raise InvalidConfig(f"missing required key {name}.{key}")
        else:
            out[key] = copy.deepcopy(default)
    return out


def defaults(name: str) -> dict:
    """Values of section ``name`` when it is absent from the config."""
    return _validate_section(name, {})


def _build_scenario(sections: dict) -> Optional[Scenario]:
    if "waveguide" not in sections and "signal" not in sections:
        return None
    for needed in ("waveguide", "signal"):
        if needed not in sections:
            raise InvalidConfig(f"missing [{needed}] section")
    w = sections["waveguide.wall"]
    wall = ConductorModel(
        name=w["name"],
        sigma_ref=w["conductivity"],
        cryo_factor=w["cryo_factor"],
        knee_temperature=w["knee_temperature"],
        reference_temperature=w["reference_temperature"],
    )
    g = sections["waveguide"]
    wg = WaveguideSpec(
        width=g["width"],
        height=g["height"],
        length=g["length"],
        wall=wall,
        eps_r=g["eps_r"],
        mu_r=g["mu_r"],
        temperature=g["temperature"],
    )
    s = sections["signal"]
    signal = SignalSpec(frequency=s["frequency"], input_photons=s["input_photons"])
    antenna = None
    if "antenna" in sections:
        a = sections["antenna"]
        antenna = AntennaSpec(width=a["width"], height=a["height"],
                              capacitance=a["capacitance"], mu_r=a["mu_r"])
    model = _enum_value("attenuation_model", sections["attenuation_model"],
                        tuple(m.value for m in AttenuationModel))
    return Scenario(waveguide=wg, signal=signal, antenna=antenna,
                    attenuation_model=AttenuationModel(model))


def load_dict(raw: dict, overrides: tuple[str, ...] | list[str] = ()) -> Config:
    """Validate a parsed config table, after applying ``key=value`` overrides."""
    raw = copy.deepcopy(raw)
    for item in overrides:
        apply_override(raw, item)
    found = _split_sections(raw)
    sections: dict[str, Any] = {}
    sections["attenuation_model"] = _coerce(
        "attenuation_model", "str", found.get("attenuation_model", "textbook")
    )
    for name in SECTION_ORDER:
        if name in found:
            sections[name] = _validate_section(name, found[name])
    if "waveguide" in sections and "waveguide.wall" not in sections:
        sections["waveguide.wall"] = _validate_section("waveguide.wall", {})
    if "mc" in sections and "mc.convergence" not in sections:
        sections["mc.convergence"] = _validate_section("mc.convergence", {})
    out = sections.get("output") or _validate_section("output", {})
    scenario = _build_scenario(sections)
    return Config(scenario=scenario, output=OutputSpec(**out), sections=sections)


def _locate(text: str, message: str) -> str:
    """Append the config line of the key named in ``message``, when it can be found."""
    m = re.search(r"\b([a-z_]+(?:\.[a-z_]+)*)\.([a-z_]+)\b", message)
    if not m:
        return message
    section, key = m.group(1), m.group(2)
    current = ""
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        header = re.match(r"\[([^\]]+)\]", stripped)
        if header:
            current = header.group(1).strip()
        elif current == section and re.match(rf"{re.escape(key)}\s*=", stripped):
            return f"line {lineno}: {message}"
    return message


def load(path: str | Path, overrides: tuple[str, ...] | list[str] = ()) -> Config:
    """Load a ``.toml`` or ``.json`` config file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidConfig(f"cannot read config {path}: {exc}") from exc
    try:
        if path.suffix == ".json":
            raw = json.loads(text)
            if isinstance(raw, dict) and "inputs" in raw and "schema_version" in raw:
                raw = raw["inputs"]
        else:
            raw = tomllib.loads(text)
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as exc:
        raise InvalidConfig(f"{path}: {exc}") from exc
    try:
        return load_dict(raw, overrides)
    except InvalidConfig as exc:
        raise InvalidConfig(f"{path}: {_locate(text, str(exc))}") from exc


def apply_override(raw: dict, item: str) -> None:
    """Set ``a.b.c=value`` in ``raw``; the value is parsed as a TOML literal."""
    if "=" not in item:
        raise InvalidConfig(f"override {item!r} must look like key=value")
    key, _, text = item.partition("=")
    parts = [p.strip() for p in key.strip().split(".")]
    if not all(parts):
        raise InvalidConfig(f"override key {key!r} is malformed")
    try:
        value = tomllib.loads(f"v = {text.strip()}")["v"]
    except tomllib.TOMLDecodeError:
        value = text.strip()
    table = raw
    for part in parts[:-1]:
        table = table.setdefault(part, {})
        if not isinstance(table, dict):
            raise InvalidConfig(f"override {key!r} descends into a non-table")
    table[parts[-1]] = value


def scenario_sections(scenario: Scenario) -> dict:
    """Config sections describing ``scenario`` (inverse of the scenario part of ``load_dict``)."""
    wg = scenario.waveguide
    out: dict[str, Any] = {
        "attenuation_model": AttenuationModel(scenario.attenuation_model).value,
        "waveguide": {
            "width": wg.width,
            "height": wg.height,
            "length": wg.length,
            "eps_r": wg.eps_r,
            "mu_r": wg.mu_r,
            "temperature": wg.temperature,
            "wall": {
                "name": wg.wall.name,
                "conductivity": wg.wall.sigma_ref,
                "cryo_factor": wg.wall.cryo_factor,
                "knee_temperature": wg.wall.knee_temperature,
                "reference_temperature": wg.wall.reference_temperature,
            },
        },
        "signal": {
            "frequency": scenario.signal.frequency,
            "input_photons": scenario.signal.input_photons,
        },
    }
    if scenario.antenna is not None:
        a = scenario.antenna
        out["antenna"] = {"width": a.width, "height": a.height, "capacitance": a.capacitance}
        if a.mu_r is not None:
            out["antenna"]["mu_r"] = a.mu_r
    return out


def to_toml(raw: dict) -> str:
    """Serialize a config table (as produced by :func:`scenario_sections`) to TOML."""
    lines: list[str] = []

    def fmt(v: Any) -> str:
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, str):
            return json.dumps(v)
        if isinstance(v, float):
            if math.isinf(v):
                return "inf" if v > 0 else "-inf"
            return repr(v)
        if isinstance(v, list):
            return "[" + ", ".join(fmt(x) for x in v) + "]"
        return str(v)

    def emit(prefix: str, table: dict) -> None:
        scalars = {k: v for k, v in table.items() if not isinstance(v, dict) and v is not None}
        if prefix:
            lines.append(f"[{prefix}]")
        lines.extend(f"{k} = {fmt(v)}" for k, v in scalars.items())
        lines.append("")
        for k, v in table.items():
            if isinstance(v, dict):
                emit(f"{prefix}.{k}" if prefix else k, v)

    emit("", raw)
    return "\n".join(lines).lstrip("\n")
