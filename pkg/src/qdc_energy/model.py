"""Steady-state power model for a cryogenically cooled quantum data center.

The facility splits electronic power between circuits inside the cryostat
(fraction ``phi``) and circuits at ambient temperature.  Heat deposited in
the cryostat (electronics plus leak through the vessel wall) is lifted by a
refrigeration plant running at a fraction ``eta_c`` of the Carnot limit;
ambient electronics are cooled by conventional plant characterized by a
figure of merit ``fom``.  All quantities are strict SI (W, K, m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Minimum surface-to-volume shape factor: a sphere of volume V has area
# (36*pi)^(1/3) * V^(2/3); no solid does better.
SPHERE_SHAPE_FACTOR = float(np.cbrt(36.0 * math.pi))


class DomainError(ValueError):
    """A parameter is outside the model's physical domain."""


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")


def _cbrt(x: float) -> float:
    # np.cbrt is exact on perfect cubes, which keeps ratio identities
    # (e.g. leak-to-cooling at round qubit counts) exact as well.
    return float(np.cbrt(x))


@dataclass(frozen=True)
class OperatingPoint:
    """Cold-side and ambient temperatures of a deployment, in kelvin."""

    t_cold: float
    t_ambient: float

    def __post_init__(self) -> None:
        _require_finite("t_ambient", self.t_ambient)
        _require_finite("t_cold", self.t_cold)
        if not 0.0 < self.t_cold < self.t_ambient:
            raise DomainError(
                f"require 0 < t_cold < t_ambient, got t_cold={self.t_cold}, "
                f"t_ambient={self.t_ambient}"
            )


@dataclass(frozen=True)
class CoolingPlant:
    """Cryogenic plant efficiency (fraction of Carnot) and ambient cooling FOM."""

    eta_c: float
    fom: float

    def __post_init__(self) -> None:
        _require_finite("eta_c", self.eta_c)
        _require_finite("fom", self.fom)
        if not 0.0 < self.eta_c <= 1.0:
            raise DomainError(f"eta_c must be in (0, 1], got {self.eta_c}")
        if self.fom <= 0.0:
            raise DomainError(f"fom must be > 0, got {self.fom}")


@dataclass(frozen=True)
class Architecture:
    """Qubit count, cryogenic power split phi, and optional per-qubit power.

    ``q_per_qubit`` is the total electronic power per qubit in watts; leave
    it ``None`` to work in scaled (per-qubit-normalized) mode.
    """

    n_qubits: int
    phi: float
    q_per_qubit: float | None = None

    def __post_init__(self) -> None:
        _validate_n_qubits(self.n_qubits)
        _validate_phi(self.phi)
        if self.q_per_qubit is not None:
            _require_finite("q_per_qubit", self.q_per_qubit)
            if self.q_per_qubit <= 0.0:
                raise DomainError(f"q_per_qubit must be > 0, got {self.q_per_qubit}")


def _validate_n_qubits(n_qubits: int) -> None:
    if not isinstance(n_qubits, (int, np.integer)) or isinstance(n_qubits, bool):
        raise DomainError(f"n_qubits must be an integer, got {n_qubits!r}")
    if n_qubits < 1:
        raise DomainError(f"n_qubits must be >= 1, got {n_qubits}")


def _validate_phi(phi: float) -> None:
    _require_finite("phi", phi)
    if not 0.0 <= phi <= 1.0:
        raise DomainError(f"phi must be in [0, 1], got {phi}")


@dataclass(frozen=True)
class CryostatPhysical:
    """Vessel-level heat-leak parameters.

    ``u_coeff``: wall heat transfer coefficient, W/(m^2 K).
    ``c1_geom``: area = c1_geom * volume^(2/3); 6 for a cube, (36*pi)^(1/3)
    for a sphere, never less than the spherical value.
    ``v_per_qubit``: cryostat volume budgeted per qubit (packaging included), m^3.
    ``q1_per_qubit``: electronic power dissipated inside the cryostat per qubit, W.
    """

    u_coeff: float
    c1_geom: float
    v_per_qubit: float
    q1_per_qubit: float

    def __post_init__(self) -> None:
        for name in ("u_coeff", "c1_geom", "v_per_qubit", "q1_per_qubit"):
            _require_finite(name, getattr(self, name))
        if self.u_coeff < 0.0:
            raise DomainError(f"u_coeff must be >= 0, got {self.u_coeff}")
        if self.c1_geom < SPHERE_SHAPE_FACTOR:
            raise DomainError(
                f"c1_geom must be >= {SPHERE_SHAPE_FACTOR:.6f} (sphere), "
                f"got {self.c1_geom}"
            )
        if self.v_per_qubit <= 0.0:
            raise DomainError(f"v_per_qubit must be > 0, got {self.v_per_qubit}")
        if self.q1_per_qubit <= 0.0:
            raise DomainError(
                f"q1_per_qubit must be > 0, got {self.q1_per_qubit} "
                "(a zero in-cryostat load makes the leak ratio unbounded)"
            )


@dataclass(frozen=True)
class HeatLeak:
    """Ambient heat leak into the cryostat, abstract or physically derived.

    Exactly one of ``abstract_beta`` (dimensionless leak-to-dissipation
    ratio, 0 for a perfectly insulated vessel) or ``physical`` must be set.
    """

    abstract_beta: float | None = None
    physical: CryostatPhysical | None = None

    def __post_init__(self) -> None:
        if (self.abstract_beta is None) == (self.physical is None):
            raise DomainError(
                "exactly one of abstract_beta or physical must be given"
            )
        if self.abstract_beta is not None:
            _require_finite("abstract_beta", self.abstract_beta)
            if self.abstract_beta < 0.0:
                raise DomainError(
                    f"abstract_beta must be >= 0, got {self.abstract_beta}"
                )

    @classmethod
    def from_beta(cls, beta: float) -> "HeatLeak":
        return cls(abstract_beta=beta)

    @classmethod
    def from_physical(cls, cryostat: CryostatPhysical) -> "HeatLeak":
        return cls(physical=cryostat)

    @property
    def is_physical(self) -> bool:
        return self.physical is not None

    def resolve_beta(self, t_ambient: float) -> float:
        """Dimensionless leak ratio, deriving it from vessel parameters if needed."""
        if self.abstract_beta is not None:
            return self.abstract_beta
        assert self.physical is not None
        return beta_from_physical(self.physical, t_ambient)


@dataclass(frozen=True)
class PowerBreakdown:
    """Absolute power terms of one scenario, all in watts.

    ``q1_cryo_total`` is the full heat load lifted from the cryostat
    (electronics plus leak); ``w_s_total_cooling`` and ``p_t_total`` are the
    cooling and facility sums.
    """

    p1_cryo_electronics: float
    p2_ambient_electronics: float
    q_o_leak: float
    q1_cryo_total: float
    w1_cryo_cooling: float
    w2_ambient_cooling: float
    w_s_total_cooling: float
    p_t_total: float

    def __post_init__(self) -> None:
        for name in (
            "p1_cryo_electronics",
            "p2_ambient_electronics",
            "q_o_leak",
            "q1_cryo_total",
            "w1_cryo_cooling",
            "w2_ambient_cooling",
            "w_s_total_cooling",
            "p_t_total",
        ):
            value = getattr(self, name)
            _require_finite(name, value)
            if value < 0.0:
                raise DomainError(f"{name} must be >= 0, got {value}")


@dataclass(frozen=True)
class FractionReport:
    """Share of total facility power taken by each of the four sinks.

    ``f_electronics``: all electronic loads; ``f_cryo_electronics_cooling``:
    lifting in-cryostat electronic heat; ``f_leak_cooling``: lifting the
    ambient heat leak; ``f_ambient_cooling``: conventional cooling of the
    ambient electronics.  The four always sum to one.
    """

    f_electronics: float
    f_cryo_electronics_cooling: float
    f_leak_cooling: float
    f_ambient_cooling: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (
            self.f_electronics,
            self.f_cryo_electronics_cooling,
            self.f_leak_cooling,
            self.f_ambient_cooling,
        )

    def __post_init__(self) -> None:
        for value in self.as_tuple():
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"fractions must be in [0, 1], got {value}")
        if abs(sum(self.as_tuple()) - 1.0) > 1e-12:
            raise DomainError("fractions must sum to 1 within 1e-12")


@dataclass(frozen=True)
class Scenario:
    """One fully specified deployment, bundling the four parameter groups."""

    architecture: Architecture
    leak: HeatLeak
    operating_point: OperatingPoint
    cooling_plant: CoolingPlant

    def pue(self) -> float:
        return pue(
            self.architecture.phi,
            self.leak,
            self.architecture.n_qubits,
            self.operating_point,
            self.cooling_plant,
        )

    def scaled_power(self) -> float:
        return scaled_power(
            self.architecture.n_qubits,
            self.architecture.phi,
            self.leak,
            self.operating_point,
            self.cooling_plant,
        )

    def fractions(self) -> FractionReport:
        return power_fractions(
            self.architecture.phi,
            self.leak,
            self.architecture.n_qubits,
            self.operating_point,
            self.cooling_plant,
        )

    def breakdown(self) -> PowerBreakdown:
        return power_breakdown(
            self.architecture, self.leak, self.operating_point, self.cooling_plant
        )


def carnot_cop(op: OperatingPoint) -> float:
    """Carnot coefficient of performance T_c / (T_o - T_c)."""
    return op.t_cold / (op.t_ambient - op.t_cold)


def effective_cop(op: OperatingPoint, plant: CoolingPlant) -> float:
    """Achieved cryogenic COP: eta_c times the Carnot limit."""
    return plant.eta_c * carnot_cop(op)


def beta_from_physical(cryostat: CryostatPhysical, t_ambient: float) -> float:
    """Dimensionless leak ratio U*C1*T_o*v_q^(2/3) / q1 of a physical vessel."""
    _require_finite("t_ambient", t_ambient)
    if t_ambient <= 0.0:
        raise DomainError(f"t_ambient must be > 0, got {t_ambient}")
    area_per_qubit = cryostat.c1_geom * _cbrt(cryostat.v_per_qubit) ** 2
    return cryostat.u_coeff * area_per_qubit * t_ambient / cryostat.q1_per_qubit


def external_heat_load(
    cryostat: CryostatPhysical, t_ambient: float, n_qubits: int
) -> float:
    """Heat leaking into the vessel, in watts; grows as n_qubits^(2/3).

    Uses the thin-wall approximation that the temperature drop across the
    vessel is the full ambient temperature (T_c << T_o).
    """
    _require_finite("t_ambient", t_ambient)
    if t_ambient <= 0.0:
        raise DomainError(f"t_ambient must be > 0, got {t_ambient}")
    _validate_n_qubits(n_qubits)
    area = cryostat.c1_geom * _cbrt(cryostat.v_per_qubit * n_qubits) ** 2
    return cryostat.u_coeff * area * t_ambient


def _reject_phi_zero_physical(phi: float, leak: HeatLeak) -> None:
    # With no in-cryostat dissipation the vessel-derived leak ratio is
    # unbounded; an abstract beta stays meaningful (all cryostat terms zero).
    if leak.is_physical and phi == 0.0:
        raise DomainError(
            "phi must be > 0 with a physical heat leak "
            "(zero in-cryostat power makes the leak ratio unbounded)"
        )


def _cooling_terms(
    phi: float,
    leak: HeatLeak,
    n_qubits: int,
    op: OperatingPoint,
    plant: CoolingPlant,
) -> tuple[float, float, float]:
    """Per-unit-electronics cooling terms: (cryo electronics, leak, ambient)."""
    _validate_phi(phi)
    _validate_n_qubits(n_qubits)
    _reject_phi_zero_physical(phi, leak)
    cop = effective_cop(op, plant)
    beta = leak.resolve_beta(op.t_ambient)
    lte = phi / cop
    leak_term = lte * (beta / _cbrt(n_qubits))
    ext = (1.0 - phi) / plant.fom
    return lte, leak_term, ext


def pue(
    phi: float,
    leak: HeatLeak,
    n_qubits: int,
    op: OperatingPoint,
    plant: CoolingPlant,
) -> float:
    """Power usage efficiency: total facility power over electronic power."""
    lte, leak_term, ext = _cooling_terms(phi, leak, n_qubits, op, plant)
    return 1.0 + lte + leak_term + ext


def scaled_power(
    n_qubits: int,
    phi: float,
    leak: HeatLeak,
    op: OperatingPoint,
    plant: CoolingPlant,
) -> float:
    """Total facility power normalized by the per-qubit electronic power."""
    return n_qubits * pue(phi, leak, n_qubits, op, plant)


def power_fractions(
    phi: float,
    leak: HeatLeak,
    n_qubits: int,
    op: OperatingPoint,
    plant: CoolingPlant,
) -> FractionReport:
    """Four-way split of total power; see FractionReport for the sinks."""
    lte, leak_term, ext = _cooling_terms(phi, leak, n_qubits, op, plant)
    total = 1.0 + lte + leak_term + ext
    return FractionReport(
        f_electronics=1.0 / total,
        f_cryo_electronics_cooling=lte / total,
        f_leak_cooling=leak_term / total,
        f_ambient_cooling=ext / total,
    )


def power_breakdown(
    arch: Architecture,
    leak: HeatLeak,
    op: OperatingPoint,
    plant: CoolingPlant,
) -> PowerBreakdown:
    """Absolute power terms in watts; requires ``q_per_qubit``.

    The cryostat heat load is the in-cryostat electronic power plus the
    ambient leak; the leak comes from the vessel parameters when the leak is
    physical, otherwise from ``beta`` scaled by the in-cryostat dissipation.
    """
    if arch.q_per_qubit is None:
        raise DomainError("power_breakdown requires q_per_qubit (absolute mode)")
    _reject_phi_zero_physical(arch.phi, leak)

    n = arch.n_qubits
    p_c = n * arch.q_per_qubit
    p1 = arch.phi * p_c
    p2 = (1.0 - arch.phi) * p_c

    if leak.is_physical:
        assert leak.physical is not None
        q_o = external_heat_load(leak.physical, op.t_ambient, n)
    else:
        q1_per_qubit = arch.phi * arch.q_per_qubit
        q_o = leak.resolve_beta(op.t_ambient) * q1_per_qubit * _cbrt(n) ** 2

    q1_total = p1 + q_o
    w1 = q1_total / effective_cop(op, plant)
    w2 = p2 / plant.fom
    w_s = w1 + w2
    return PowerBreakdown(
        p1_cryo_electronics=p1,
        p2_ambient_electronics=p2,
        q_o_leak=q_o,
        q1_cryo_total=q1_total,
        w1_cryo_cooling=w1,
        w2_ambient_cooling=w2,
        w_s_total_cooling=w_s,
        p_t_total=p1 + p2 + w_s,
    )
