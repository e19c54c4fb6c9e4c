"""Search procedures over the power model: crossovers, ranking, budget sizing."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .model import (
    CoolingPlant,
    DomainError,
    HeatLeak,
    OperatingPoint,
    Scenario,
    power_fractions,
    pue,
)
from .presets import TechnologyPreset
from .volume import power_vs_qv, quantum_volume

# Each criterion compares two power shares; the root is where they match.
COOLING_EQUALS_ELECTRONICS = "cooling_equals_electronics"
CRYO_COOLING_EQUALS_ELECTRONICS = "cryo_cooling_equals_electronics"
LEAK_EQUALS_CRYO_COOLING = "leak_equals_cryo_cooling"
CRITERIA = (
    COOLING_EQUALS_ELECTRONICS,
    CRYO_COOLING_EQUALS_ELECTRONICS,
    LEAK_EQUALS_CRYO_COOLING,
)

FREE_VARIABLES = ("phi", "beta")

_MAX_BISECTIONS = 200
_RESIDUAL_RTOL = 1e-10


class BracketingError(DomainError):
    """The criterion does not change sign over the requested bracket."""


class InfeasibleBudgetError(DomainError):
    """The power budget cannot support even a single qubit."""


@dataclass(frozen=True)
class CrossoverQuery:
    """Find where two power shares balance as one parameter moves."""

    criterion: str
    free: str
    scenario: Scenario
    bracket: tuple[float, float]

    def __post_init__(self) -> None:
        if self.criterion not in CRITERIA:
            raise DomainError(
                f"unknown criterion {self.criterion!r}; "
                f"choose from {', '.join(CRITERIA)}"
            )
        if self.free not in FREE_VARIABLES:
            raise DomainError(
                f"free variable must be one of {', '.join(FREE_VARIABLES)}, "
                f"got {self.free!r}"
            )
        lo, hi = self.bracket
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise DomainError(f"bracket must be finite with lo < hi, got {self.bracket}")


@dataclass(frozen=True)
class BudgetQuery:
    """Largest machine that fits a facility power budget, and its volume."""

    power_budget: float
    q_per_qubit: float
    eps_eff: float
    scenario: Scenario

    def __post_init__(self) -> None:
        for name in ("power_budget", "q_per_qubit", "eps_eff"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise DomainError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class BudgetResult:
    max_qubits: int
    power_w: float
    q_volume: float


def _criterion_sides(q: CrossoverQuery, x: float) -> tuple[float, float]:
    scenario = _with_free(q, x)
    arch, leak = scenario.architecture, scenario.leak
    op, plant = scenario.operating_point, scenario.cooling_plant
    if q.criterion == COOLING_EQUALS_ELECTRONICS:
        # Cooling power share equals electronic power share: PUE of 2.
        total_over_pc = pue(arch.phi, leak, arch.n_qubits, op, plant)
        return total_over_pc - 1.0, 1.0
    report = power_fractions(arch.phi, leak, arch.n_qubits, op, plant)
    if q.criterion == CRYO_COOLING_EQUALS_ELECTRONICS:
        return report.f_cryo_electronics_cooling, report.f_electronics
    return report.f_leak_cooling, report.f_cryo_electronics_cooling


def _with_free(q: CrossoverQuery, x: float) -> Scenario:
    if q.free == "phi":
        arch = replace(q.scenario.architecture, phi=x)
        return replace(q.scenario, architecture=arch)
    return replace(q.scenario, leak=HeatLeak.from_beta(x))


def _gap(q: CrossoverQuery, x: float) -> float:
    lhs, rhs = _criterion_sides(q, x)
    return lhs - rhs


def find_crossover(q: CrossoverQuery) -> float:
    """Bisect the bracket for the balance point of the chosen criterion.

    The criterion gap is monotone in both free variables, so plain bisection
    is robust; the returned point satisfies the balance to a relative
    residual of 1e-10.
    """
    lo, hi = q.bracket
    g_lo, g_hi = _gap(q, lo), _gap(q, hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if math.copysign(1.0, g_lo) == math.copysign(1.0, g_hi):
        raise BracketingError(
            f"criterion {q.criterion} does not change sign over "
            f"[{lo}, {hi}] (gap {g_lo} to {g_hi})"
        )
    for _ in range(_MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # interval at float resolution
        g_mid = _gap(q, mid)
        if g_mid == 0.0:
            lo = hi = mid
            break
        if math.copysign(1.0, g_mid) == math.copysign(1.0, g_lo):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    lhs, rhs = _criterion_sides(q, root)
    scale = max(abs(lhs), abs(rhs))
    if scale > 0.0 and abs(lhs - rhs) > _RESIDUAL_RTOL * scale:
        raise BracketingError(
            f"bisection stalled: residual {abs(lhs - rhs)} exceeds "
            f"{_RESIDUAL_RTOL} of {scale}"
        )
    return root


def rank_technologies(
    q_volume: float,
    phi: float,
    beta: float,
    technologies: list[TechnologyPreset],
    plant: CoolingPlant,
    t_ambient: float = 300.0,
) -> list[tuple[str, float]]:
    """Technologies ordered by scaled power at the target volume, best first.

    Each candidate is evaluated at its default cold temperature; ties break
    by name.
    """
    if not technologies:
        raise DomainError("technology list is empty")
    ranked = []
    for preset in technologies:
        op = OperatingPoint(t_cold=preset.t_cold_default, t_ambient=t_ambient)
        ranked.append((preset.name, power_vs_qv(q_volume, phi, beta, op, plant)))
    ranked.sort(key=lambda item: (item[1], item[0]))
    return ranked


def max_qubits_in_budget(q: BudgetQuery) -> BudgetResult:
    """Largest qubit count whose total facility power fits the budget.

    Total power grows monotonically with size, so double until over budget
    and bisect back down; reports the volume achievable at that size.
    """
    def total_power(n: int) -> float:
        arch = replace(
            q.scenario.architecture, n_qubits=n, q_per_qubit=q.q_per_qubit
        )
        return replace(q.scenario, architecture=arch).breakdown().p_t_total

    if total_power(1) > q.power_budget:
        raise InfeasibleBudgetError(
            f"budget {q.power_budget} W is below the single-qubit power "
            f"{total_power(1)} W"
        )
    lo = 1
    hi = 2
    while total_power(hi) <= q.power_budget:
        lo = hi
        hi *= 2
    # Invariant: lo feasible, hi infeasible.
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if total_power(mid) <= q.power_budget:
            lo = mid
        else:
            hi = mid
    return BudgetResult(
        max_qubits=lo,
        power_w=total_power(lo),
        q_volume=quantum_volume(lo, q.eps_eff).volume,
    )
