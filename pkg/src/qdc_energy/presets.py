"""Named parameter sets: qubit technologies, plant efficiencies, vessel U range."""

from __future__ import annotations

from dataclasses import dataclass

from .model import CoolingPlant, DomainError

# Reference ambient plant: a well-run conventional facility (PUE 1.2 when
# nothing is cryogenic) at room temperature.
REFERENCE_FOM = 5.0
REFERENCE_T_AMBIENT = 300.0
REFERENCE_ETA_C = 0.15

INTEGRATED = "integrated"
LABORATORY = "laboratory"


@dataclass(frozen=True)
class TechnologyPreset:
    """Operating-temperature envelope of one qubit technology."""

    name: str
    t_cold_range: tuple[float, float]
    t_cold_default: float
    integration_status: str
    provenance_note: str = ""

    def __post_init__(self) -> None:
        lo, hi = self.t_cold_range
        if not 0.0 < lo <= self.t_cold_default <= hi:
            raise DomainError(
                f"preset {self.name!r}: need 0 < min <= default <= max, "
                f"got range {self.t_cold_range} default {self.t_cold_default}"
            )
        if self.integration_status not in (INTEGRATED, LABORATORY):
            raise DomainError(
                f"preset {self.name!r}: unknown integration_status "
                f"{self.integration_status!r}"
            )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "t_cold_min_K": self.t_cold_range[0],
            "t_cold_max_K": self.t_cold_range[1],
            "t_cold_default_K": self.t_cold_default,
            "integration_status": self.integration_status,
            "provenance_note": self.provenance_note,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TechnologyPreset":
        known = {
            "name",
            "t_cold_min_K",
            "t_cold_max_K",
            "t_cold_default_K",
            "integration_status",
            "provenance_note",
        }
        unknown = set(data) - known
        if unknown:
            raise DomainError(f"technology preset: unknown keys {sorted(unknown)}")
        try:
            return cls(
                name=data["name"],
                t_cold_range=(data["t_cold_min_K"], data["t_cold_max_K"]),
                t_cold_default=data["t_cold_default_K"],
                integration_status=data["integration_status"],
                provenance_note=data.get("provenance_note", ""),
            )
        except KeyError as exc:
            raise DomainError(f"technology preset: missing key {exc}") from exc


@dataclass(frozen=True)
class EfficiencyPreset:
    """Achievable fraction of the Carnot COP for one cooling approach."""

    name: str
    eta_c: float
    provenance_note: str = ""

    def __post_init__(self) -> None:
        if not 0.0 < self.eta_c <= 1.0:
            raise DomainError(
                f"preset {self.name!r}: eta_c must be in (0, 1], got {self.eta_c}"
            )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "eta_c": self.eta_c,
            "provenance_note": self.provenance_note,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EfficiencyPreset":
        known = {"name", "eta_c", "provenance_note"}
        unknown = set(data) - known
        if unknown:
            raise DomainError(f"efficiency preset: unknown keys {sorted(unknown)}")
        try:
            return cls(
                name=data["name"],
                eta_c=data["eta_c"],
                provenance_note=data.get("provenance_note", ""),
            )
        except KeyError as exc:
            raise DomainError(f"efficiency preset: missing key {exc}") from exc


def builtin_technologies() -> list[TechnologyPreset]:
    """The four qubit technologies with demonstrated operating ranges."""
    return [
        TechnologyPreset(
            name="superconducting",
            t_cold_range=(0.010, 0.020),
            t_cold_default=0.015,
            integration_status=INTEGRATED,
            provenance_note="dilution-cooled machines deployed at 10-20 mK",
        ),
        TechnologyPreset(
            name="ion-trap",
            t_cold_range=(4.0, 10.0),
            t_cold_default=4.5,
            integration_status=INTEGRATED,
            provenance_note="cryogenic traps run near 4-5 K; ceiling at the "
            "top of the demonstrated qubit range",
        ),
        TechnologyPreset(
            name="silicon",
            t_cold_range=(0.1, 10.0),
            t_cold_default=1.0,
            integration_status=LABORATORY,
            provenance_note="spin devices shown from 0.1 K up to 10 K",
        ),
        TechnologyPreset(
            name="diamond",
            t_cold_range=(1.0, 10.0),
            t_cold_default=4.0,
            integration_status=LABORATORY,
            provenance_note="assumed range; NV-center devices lack a published "
            "envelope, override as needed",
        ),
    ]


def builtin_efficiencies() -> list[EfficiencyPreset]:
    """Fraction-of-Carnot figures for the viable cryogenic cooling routes."""
    return [
        EfficiencyPreset(
            name="distillation-large",
            eta_c=0.15,
            provenance_note="large helium distillation plants hold 12-18% of "
            "Carnot across 10 mK-10 K",
        ),
        EfficiencyPreset(
            name="laser-achieved",
            eta_c=0.03,
            provenance_note="best demonstrated laser cooling efficiency",
        ),
        EfficiencyPreset(
            name="laser-theoretical-max",
            eta_c=0.20,
            provenance_note="thermodynamic ceiling for laser cooling of solids",
        ),
    ]


def builtin_u_range() -> tuple[float, float]:
    """Vessel heat-transfer-coefficient range in W/(m^2 K), from large cryostats."""
    return (3e-4, 8e-4)


def u_range_midpoint() -> float:
    lo, hi = builtin_u_range()
    return (lo + hi) / 2.0


def u_from_milliwatt(value_mw: float) -> float:
    """Convert a heat transfer coefficient quoted in mW/(m^2 K) to W/(m^2 K)."""
    return value_mw * 1e-3


def reference_plant(eta_c: float = REFERENCE_ETA_C) -> CoolingPlant:
    """Cooling plant with the reference ambient FOM and a chosen eta_c."""
    return CoolingPlant(eta_c=eta_c, fom=REFERENCE_FOM)


def _lookup(items, name: str, kind: str):
    folded = name.casefold()
    for item in items:
        if item.name.casefold() == folded:
            return item
    names = ", ".join(sorted(item.name for item in items))
    raise DomainError(f"unknown {kind} preset {name!r}; available: {names}")


def technology(name: str) -> TechnologyPreset:
    """Case-insensitive lookup in the builtin technology catalog."""
    return _lookup(builtin_technologies(), name, "technology")


def efficiency(name: str) -> EfficiencyPreset:
    """Case-insensitive lookup in the builtin efficiency catalog."""
    return _lookup(builtin_efficiencies(), name, "efficiency")
