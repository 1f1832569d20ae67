"""Run configuration: flat key=value files with environment overrides.

Precedence, lowest to highest: built-in defaults, config file, environment
variables prefixed FELIXSIM_, explicit command-line flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

from .adders import AdderVariant, RcaScenario
from .device import DeviceParams
from .engine import GateKind, TABLE_V0_PRESET, default_v0

ENV_PREFIX = "FELIXSIM_"

_DEVICE_KEYS = {"a", "r_on", "r_off", "v_on", "v_off", "x_init"}
_FLOAT_KEYS = _DEVICE_KEYS | {"pulse_width", "dt"} | {
    f"v0_{g.value}" for g in GateKind}
_INT_KEYS = {"scenario", "seed", "sample_count"}
_STR_KEYS = {"v0_preset", "variant", "format"}

KNOWN_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS | {"dump_waveforms"}


class ConfigError(ValueError):
    """Bad configuration key or value."""


@dataclass
class RunConfig:
    device: DeviceParams = field(default_factory=DeviceParams)
    v0_preset: str = "derived"  # "derived" | "table6" | "explicit"
    explicit_v0: Dict[GateKind, float] = field(default_factory=dict)
    pulse_width: Optional[float] = None
    dt: Optional[float] = None
    scenario: int = 1
    variant: AdderVariant = AdderVariant.FAFA1
    report_format: str = "json"  # "json" | "csv"
    seed: Optional[int] = None
    sample_count: Optional[int] = None
    dump_waveforms: bool = False

    def __post_init__(self):
        if self.v0_preset not in ("derived", "table6", "explicit"):
            raise ConfigError(f"unknown v0 preset {self.v0_preset!r}")
        if self.scenario not in (1, 2):
            raise ConfigError("scenario must be 1 or 2")
        if self.report_format not in ("json", "csv"):
            raise ConfigError(f"unknown report format {self.report_format!r}")
        for gate, v0 in self.explicit_v0.items():
            if not (0.0 < v0 <= 10.0):
                raise ConfigError(f"explicit v0 for {gate.name} must be in (0, 10] V")

    def v0_for(self, gate: GateKind) -> float:
        if self.v0_preset == "table6":
            return TABLE_V0_PRESET[gate]
        if self.v0_preset == "explicit":
            if gate not in self.explicit_v0:
                raise ConfigError(f"no explicit v0 configured for {gate.name}")
            return self.explicit_v0[gate]
        return default_v0(gate, self.device)

    def rca_scenario(self) -> RcaScenario:
        approx = 4 if self.scenario == 1 else 5
        return RcaScenario(width=8, approx_lsb_count=approx,
                           approx_variant=self.variant)


def _parse_kv_text(text: str) -> Dict[str, str]:
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def _coerce(key: str, raw: str):
    if key in _FLOAT_KEYS:
        return float(raw)
    if key in _INT_KEYS:
        return int(raw)
    if key == "dump_waveforms":
        return raw.lower() in ("1", "true", "yes", "on")
    return raw


def load_config(path: Optional[Path] = None,
                overrides: Optional[Dict[str, object]] = None,
                environ: Optional[Dict[str, str]] = None) -> RunConfig:
    """Assemble a RunConfig from file, environment and explicit overrides."""
    values: Dict[str, object] = {}
    if path is not None:
        text = Path(path).read_text()
        for key, raw in _parse_kv_text(text).items():
            if key not in KNOWN_KEYS:
                raise ConfigError(f"unknown config key {key!r}")
            values[key] = _coerce(key, raw)
    env = os.environ if environ is None else environ
    for name, raw in env.items():
        if not name.startswith(ENV_PREFIX):
            continue
        key = name[len(ENV_PREFIX):].lower()
        if key in KNOWN_KEYS:
            values[key] = _coerce(key, raw)
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})

    device_kwargs = {}
    for key in _DEVICE_KEYS:
        if key in values:
            target = {"v_on": "v_on_threshold", "v_off": "v_off_threshold"}.get(key, key)
            device_kwargs[target] = values[key]
    explicit = {}
    for gate in GateKind:
        key = f"v0_{gate.value}"
        if key in values:
            explicit[gate] = values[key]
    variant_map = {
        "exact": AdderVariant.EXACT_FELIX,
        "exact-felix": AdderVariant.EXACT_FELIX,
        "fafa1": AdderVariant.FAFA1,
        "fafa2": AdderVariant.FAFA2,
    }
    variant_raw = values.get("variant", "fafa1")
    if variant_raw not in variant_map:
        raise ConfigError(f"unknown variant {variant_raw!r}")
    return RunConfig(
        device=DeviceParams(**device_kwargs),
        v0_preset=values.get("v0_preset", "explicit" if explicit else "derived"),
        explicit_v0=explicit,
        pulse_width=values.get("pulse_width"),
        dt=values.get("dt"),
        scenario=values.get("scenario", 1),
        variant=variant_map[variant_raw],
        report_format=values.get("format", "json"),
        seed=values.get("seed"),
        sample_count=values.get("sample_count"),
        dump_waveforms=bool(values.get("dump_waveforms", False)),
    )
