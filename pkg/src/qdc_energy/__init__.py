"""Analytical energy model for cryogenically cooled quantum data centers."""

from .explore import (
    BracketingError,
    BudgetQuery,
    BudgetResult,
    CrossoverQuery,
    InfeasibleBudgetError,
    find_crossover,
    max_qubits_in_budget,
    rank_technologies,
)
from .model import (
    Architecture,
    CoolingPlant,
    CryostatPhysical,
    DomainError,
    FractionReport,
    HeatLeak,
    OperatingPoint,
    PowerBreakdown,
    Scenario,
    beta_from_physical,
    carnot_cop,
    effective_cop,
    external_heat_load,
    power_breakdown,
    power_fractions,
    pue,
    scaled_power,
)
from .presets import (
    EfficiencyPreset,
    TechnologyPreset,
    builtin_efficiencies,
    builtin_technologies,
    builtin_u_range,
    reference_plant,
)
from .sweep import GridSpec, SeriesTable, SweepSpec, figure_data, run_sweep
from .volume import QvResult, n_peak, power_vs_qv, quantum_volume

__all__ = [
    "Architecture",
    "BracketingError",
    "BudgetQuery",
    "BudgetResult",
    "CoolingPlant",
    "CrossoverQuery",
    "CryostatPhysical",
    "DomainError",
    "EfficiencyPreset",
    "FractionReport",
    "GridSpec",
    "HeatLeak",
    "InfeasibleBudgetError",
    "OperatingPoint",
    "PowerBreakdown",
    "QvResult",
    "Scenario",
    "SeriesTable",
    "SweepSpec",
    "TechnologyPreset",
    "beta_from_physical",
    "builtin_efficiencies",
    "builtin_technologies",
    "builtin_u_range",
    "carnot_cop",
    "effective_cop",
    "external_heat_load",
    "figure_data",
    "find_crossover",
    "max_qubits_in_budget",
    "n_peak",
    "power_breakdown",
    "power_fractions",
    "power_vs_qv",
    "pue",
    "quantum_volume",
    "rank_technologies",
    "reference_plant",
    "run_sweep",
    "scaled_power",
]
