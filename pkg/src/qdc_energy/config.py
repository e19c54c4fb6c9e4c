"""Scenario assembly from defaults, presets, config files, and flag overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from . import presets
from .model import (
    Architecture,
    CoolingPlant,
    CryostatPhysical,
    DomainError,
    HeatLeak,
    OperatingPoint,
    Scenario,
)

ENV_CONFIG = "QDC_CONFIG"

# Later sources override earlier ones.
SOURCE_DEFAULT = "default"
SOURCE_CONFIG = "config"
SOURCE_FLAG = "flag"

_TOP_LEVEL_KEYS = {
    "architecture",
    "leak",
    "operating_point",
    "cooling_plant",
    "sweep",
    "explore",
    # Emitted by `compute --format json`; accepted so outputs re-ingest as
    # configs, never read back.
    "results",
    "meta",
}
_ARCH_KEYS = {"n_qubits", "phi", "q_per_qubit_W"}
_LEAK_BETA_KEYS = {"beta"}
_LEAK_PHYSICAL_KEYS = {
    "u_coeff_W_m2K",
    "c1_geom",
    "v_per_qubit_m3",
    "q1_per_qubit_W",
}
_OP_KEYS = {"technology", "t_cold_K", "t_ambient_K"}
_PLANT_KEYS = {"efficiency", "eta_c", "fom"}

_PHYSICAL_FLAGS = {
    "u_coeff_W_m2K": "u",
    "c1_geom": "c1",
    "v_per_qubit_m3": "vq",
    "q1_per_qubit_W": "q1",
}


@dataclass
class Resolved:
    """One scenario parameter with the layer that finally set it."""

    value: Any
    source: str


class Provenance(dict):
    """Parameter name -> Resolved, in a stable order for --explain."""

    def set(self, name: str, value: Any, source: str) -> None:
        self[name] = Resolved(value, source)

    def explain_lines(self) -> list[str]:
        return [
            f"{name} = {res.value if res.value is not None else 'none'} "
            f"({res.source})"
            for name, res in self.items()
        ]


def load_config_file(path: str | Path) -> dict:
    """Parse and key-check a JSON config document."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot read config {path}: {exc}") from exc
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise DomainError(f"config {path} must be a JSON object")
    _check_keys("config", document, _TOP_LEVEL_KEYS)
    for block, allowed in (
        ("architecture", _ARCH_KEYS),
        ("leak", _LEAK_BETA_KEYS | _LEAK_PHYSICAL_KEYS),
        ("operating_point", _OP_KEYS),
        ("cooling_plant", _PLANT_KEYS),
    ):
        if block in document:
            if not isinstance(document[block], dict):
                raise DomainError(f"config block {block!r} must be an object")
            _check_keys(block, document[block], allowed)
    return document


def _check_keys(where: str, data: dict, allowed: set[str]) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise DomainError(
            f"unknown key(s) in {where}: {', '.join(unknown)}; "
            f"allowed: {', '.join(sorted(allowed))}"
        )


def default_config_path(explicit: str | None) -> str | None:
    if explicit is not None:
        return explicit
    return os.environ.get(ENV_CONFIG) or None


def resolve_scenario(
    config: dict | None, flags: dict
) -> tuple[Scenario, Provenance]:
    """Merge defaults < presets < config file < flags into a Scenario.

    ``flags`` maps flag names (preset, efficiency, np, phi, q, beta, u, c1,
    vq, q1, tc, to, eta_c, fom) to values, with None meaning "not given".
    """
    config = config or {}
    prov = Provenance()
    prov.set("n_qubits", 1000, SOURCE_DEFAULT)
    prov.set("phi", 0.1, SOURCE_DEFAULT)
    prov.set("q_per_qubit_W", None, SOURCE_DEFAULT)
    prov.set("leak_mode", "abstract", SOURCE_DEFAULT)
    prov.set("beta", 0.0, SOURCE_DEFAULT)
    for key in _LEAK_PHYSICAL_KEYS:
        prov.set(key, None, SOURCE_DEFAULT)
    prov.set("t_cold_K", 0.015, SOURCE_DEFAULT)
    prov.set("t_ambient_K", presets.REFERENCE_T_AMBIENT, SOURCE_DEFAULT)
    prov.set("eta_c", presets.REFERENCE_ETA_C, SOURCE_DEFAULT)
    prov.set("fom", presets.REFERENCE_FOM, SOURCE_DEFAULT)

    # Preset layer: named technology (cold temperature) and efficiency.
    op_cfg = config.get("operating_point", {})
    plant_cfg = config.get("cooling_plant", {})
    tech_name = flags.get("preset") or op_cfg.get("technology")
    if tech_name is not None:
        preset = presets.technology(tech_name)
        prov.set("t_cold_K", preset.t_cold_default, f"preset:{preset.name}")
    eff_name = flags.get("efficiency") or plant_cfg.get("efficiency")
    if eff_name is not None:
        preset = presets.efficiency(eff_name)
        prov.set("eta_c", preset.eta_c, f"preset:{preset.name}")

    # Config-file layer.
    arch_cfg = config.get("architecture", {})
    for key in ("n_qubits", "phi", "q_per_qubit_W"):
        if key in arch_cfg and arch_cfg[key] is not None:
            prov.set(key, arch_cfg[key], SOURCE_CONFIG)
    leak_cfg = config.get("leak", {})
    file_beta = "beta" in leak_cfg and leak_cfg["beta"] is not None
    file_physical = any(
        key in leak_cfg and leak_cfg[key] is not None for key in _LEAK_PHYSICAL_KEYS
    )
    if file_beta and file_physical:
        raise DomainError(
            "leak block mixes beta with physical vessel keys; give one mode"
        )
    if file_beta:
        prov.set("beta", leak_cfg["beta"], SOURCE_CONFIG)
        prov.set("leak_mode", "abstract", SOURCE_CONFIG)
    if file_physical:
        for key in _LEAK_PHYSICAL_KEYS:
            if key in leak_cfg and leak_cfg[key] is not None:
                prov.set(key, leak_cfg[key], SOURCE_CONFIG)
        prov.set("leak_mode", "physical", SOURCE_CONFIG)
    for key in ("t_cold_K", "t_ambient_K"):
        if key in op_cfg and op_cfg[key] is not None:
            prov.set(key, op_cfg[key], SOURCE_CONFIG)
    for key in ("eta_c", "fom"):
        if key in plant_cfg and plant_cfg[key] is not None:
            prov.set(key, plant_cfg[key], SOURCE_CONFIG)

    # Flag layer.
    flag_beta = flags.get("beta") is not None
    flag_physical = any(
        flags.get(alias) is not None for alias in _PHYSICAL_FLAGS.values()
    )
    if flag_beta and flag_physical:
        raise DomainError("--beta conflicts with physical leak flags (--u/--c1/--vq/--q1)")
    if flag_beta:
        if prov["leak_mode"].value == "physical" and prov["leak_mode"].source != SOURCE_DEFAULT:
            raise DomainError(
                "config selects a physical leak; --beta would mix leak modes"
            )
        prov.set("beta", flags["beta"], SOURCE_FLAG)
        prov.set("leak_mode", "abstract", SOURCE_FLAG)
    if flag_physical:
        if file_beta:
            raise DomainError(
                "config selects an abstract leak (beta); physical leak flags "
                "would mix leak modes"
            )
        for key, alias in _PHYSICAL_FLAGS.items():
            if flags.get(alias) is not None:
                prov.set(key, flags[alias], SOURCE_FLAG)
        prov.set("leak_mode", "physical", SOURCE_FLAG)
    for key, alias in (
        ("n_qubits", "np"),
        ("phi", "phi"),
        ("q_per_qubit_W", "q"),
        ("t_cold_K", "tc"),
        ("t_ambient_K", "to"),
        ("eta_c", "eta_c"),
        ("fom", "fom"),
    ):
        if flags.get(alias) is not None:
            prov.set(key, flags[alias], SOURCE_FLAG)

    return _build_scenario(prov), prov


def _build_scenario(prov: Provenance) -> Scenario:
    arch = Architecture(
        n_qubits=prov["n_qubits"].value,
        phi=prov["phi"].value,
        q_per_qubit=prov["q_per_qubit_W"].value,
    )
    if prov["leak_mode"].value == "physical":
        missing = [
            key for key in sorted(_LEAK_PHYSICAL_KEYS) if prov[key].value is None
        ]
        if missing:
            raise DomainError(
                f"physical leak needs every vessel key; missing: {', '.join(missing)}"
            )
        leak = HeatLeak.from_physical(
            CryostatPhysical(
                u_coeff=prov["u_coeff_W_m2K"].value,
                c1_geom=prov["c1_geom"].value,
                v_per_qubit=prov["v_per_qubit_m3"].value,
                q1_per_qubit=prov["q1_per_qubit_W"].value,
            )
        )
    else:
        leak = HeatLeak.from_beta(prov["beta"].value)
    op = OperatingPoint(
        t_cold=prov["t_cold_K"].value, t_ambient=prov["t_ambient_K"].value
    )
    plant = CoolingPlant(eta_c=prov["eta_c"].value, fom=prov["fom"].value)
    return Scenario(
        architecture=arch, leak=leak, operating_point=op, cooling_plant=plant
    )


def scenario_to_config(scenario: Scenario) -> dict:
    """Config-schema blocks reproducing this scenario exactly."""
    arch = scenario.architecture
    document: dict[str, Any] = {
        "architecture": {
            "n_qubits": arch.n_qubits,
            "phi": arch.phi,
            "q_per_qubit_W": arch.q_per_qubit,
        }
    }
    if scenario.leak.is_physical:
        vessel = scenario.leak.physical
        document["leak"] = {
            "u_coeff_W_m2K": vessel.u_coeff,
            "c1_geom": vessel.c1_geom,
            "v_per_qubit_m3": vessel.v_per_qubit,
            "q1_per_qubit_W": vessel.q1_per_qubit,
        }
    else:
        document["leak"] = {"beta": scenario.leak.abstract_beta}
    document["operating_point"] = {
        "t_cold_K": scenario.operating_point.t_cold,
        "t_ambient_K": scenario.operating_point.t_ambient,
    }
    document["cooling_plant"] = {
        "eta_c": scenario.cooling_plant.eta_c,
        "fom": scenario.cooling_plant.fom,
    }
    return document
