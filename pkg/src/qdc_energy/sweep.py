"""Grid evaluation over the power model and canned figure-data generation."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import presets
from .model import (
    CoolingPlant,
    DomainError,
    HeatLeak,
    OperatingPoint,
    Scenario,
    power_fractions,
    pue,
    scaled_power,
)
from .volume import power_vs_qv, quantum_volume

VARYING_NAMES = ("phi", "beta", "n_qubits", "t_cold", "eps_eff", "q_volume")

OUTPUT_COLUMNS = {
    "pue": ("pue",),
    "p_t_star": ("p_t_star",),
    "fractions": ("f_e", "f_lte", "f_o", "f_ext"),
    "q_volume": ("q_volume",),
    "power_vs_qv": ("p_t_star_vs_qv",),
}

FIGURE_IDS = ("fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9")

# Default curve families for the canned figures.
_FIG_BETAS = (0.0, 0.01, 0.1, 1.0, 10.0, 100.0)
_FIG_PHIS = (0.1, 0.001, 0.00001)
_FIG_EPS = (1e-3, 1e-4, 1e-5, 1e-6)
_FIG_NP_RANGE = (10.0, 1e6)
_FIG_QV_RANGE = (1e2, 1e12)


@dataclass(frozen=True)
class GridSpec:
    """One swept parameter: linear or logarithmic grid of point values."""

    name: str
    scale: str
    start: float
    stop: float
    points: int

    def __post_init__(self) -> None:
        if self.name not in VARYING_NAMES:
            raise DomainError(
                f"unknown sweep parameter {self.name!r}; "
                f"choose from {', '.join(VARYING_NAMES)}"
            )
        if self.scale not in ("linear", "log"):
            raise DomainError(f"scale must be 'linear' or 'log', got {self.scale!r}")
        for label, value in (("start", self.start), ("stop", self.stop)):
            if not math.isfinite(value):
                raise DomainError(f"{self.name} grid {label} must be finite")
        if self.points < 1:
            raise DomainError(f"{self.name} grid needs >= 1 points, got {self.points}")
        if self.points == 1 and self.start != self.stop:
            raise DomainError(
                f"{self.name}: a single-point grid requires start == stop"
            )
        if self.scale == "log" and (self.start <= 0.0 or self.stop <= 0.0):
            raise DomainError(f"{self.name}: log grid requires positive endpoints")

    def values(self) -> list:
        if self.points == 1:
            raw = np.asarray([self.start], dtype=float)
        elif self.scale == "linear":
            raw = np.linspace(self.start, self.stop, self.points)
        else:
            raw = np.logspace(
                math.log10(self.start), math.log10(self.stop), self.points
            )
        if self.name == "n_qubits":
            # Qubit counts are integers; round grid points to the nearest.
            counts = [int(v) for v in np.rint(raw)]
            if any(v < 1 for v in counts):
                raise DomainError("n_qubits grid rounds below 1")
            return counts
        return [float(v) for v in raw]


@dataclass(frozen=True)
class SweepSpec:
    """What to vary, over which fixed scenario, and which outputs to record."""

    varying: tuple[GridSpec, ...]
    fixed: Scenario
    outputs: tuple[str, ...]
    eps_eff: float | None = None

    def __post_init__(self) -> None:
        if not 1 <= len(self.varying) <= 2:
            raise DomainError("sweep needs one or two varying parameters")
        names = [g.name for g in self.varying]
        if len(set(names)) != len(names):
            raise DomainError("varying parameters must be distinct")
        if not self.outputs:
            raise DomainError("sweep needs at least one output")
        for output in self.outputs:
            if output not in OUTPUT_COLUMNS:
                raise DomainError(
                    f"unknown output {output!r}; "
                    f"choose from {', '.join(OUTPUT_COLUMNS)}"
                )
        if len(set(self.outputs)) != len(self.outputs):
            raise DomainError("outputs must be distinct")
        if "q_volume" in self.outputs:
            if "q_volume" in names:
                raise DomainError(
                    "output q_volume cannot be combined with varying q_volume"
                )
            if "eps_eff" not in names and self.eps_eff is None:
                raise DomainError(
                    "output q_volume needs eps_eff (varying or fixed)"
                )
        if "power_vs_qv" in self.outputs and "q_volume" not in names:
            raise DomainError("output power_vs_qv needs q_volume as a varying parameter")


@dataclass(frozen=True)
class SeriesTable:
    """Rectangular numeric table with named columns and scenario metadata."""

    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        for i, row in enumerate(self.rows):
            if len(row) != len(self.columns):
                raise DomainError(
                    f"row {i} has {len(row)} cells for {len(self.columns)} columns"
                )
            for name, cell in zip(self.columns, row):
                if not math.isfinite(cell):
                    raise DomainError(f"non-finite cell in row {i}, column {name!r}")

    def column(self, name: str) -> list[float]:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]


def _scenario_metadata(fixed: Scenario) -> dict:
    arch, leak, op, plant = (
        fixed.architecture,
        fixed.leak,
        fixed.operating_point,
        fixed.cooling_plant,
    )
    if leak.is_physical:
        c = leak.physical
        leak_meta = {
            "u_coeff_W_m2K": c.u_coeff,
            "c1_geom": c.c1_geom,
            "v_per_qubit_m3": c.v_per_qubit,
            "q1_per_qubit_W": c.q1_per_qubit,
        }
    else:
        leak_meta = {"beta": leak.abstract_beta}
    return {
        "n_qubits": arch.n_qubits,
        "phi": arch.phi,
        "q_per_qubit_W": arch.q_per_qubit,
        "leak": leak_meta,
        "t_cold_K": op.t_cold,
        "t_ambient_K": op.t_ambient,
        "eta_c": plant.eta_c,
        "fom": plant.fom,
    }


def _evaluate_point(spec: SweepSpec, overrides: dict) -> list[float]:
    fixed = spec.fixed
    n = overrides.get("n_qubits", fixed.architecture.n_qubits)
    phi = overrides.get("phi", fixed.architecture.phi)
    if "beta" in overrides:
        leak = HeatLeak.from_beta(overrides["beta"])
    else:
        leak = fixed.leak
    op = OperatingPoint(
        t_cold=overrides.get("t_cold", fixed.operating_point.t_cold),
        t_ambient=fixed.operating_point.t_ambient,
    )
    plant = fixed.cooling_plant
    eps = overrides.get("eps_eff", spec.eps_eff)
    q_vol = overrides.get("q_volume")

    values: list[float] = []
    for output in spec.outputs:
        if output == "pue":
            values.append(pue(phi, leak, n, op, plant))
        elif output == "p_t_star":
            values.append(scaled_power(n, phi, leak, op, plant))
        elif output == "fractions":
            values.extend(power_fractions(phi, leak, n, op, plant).as_tuple())
        elif output == "q_volume":
            values.append(quantum_volume(n, eps).volume)
        else:  # power_vs_qv
            beta = leak.resolve_beta(op.t_ambient)
            values.append(power_vs_qv(q_vol, phi, beta, op, plant))
    return values


def run_sweep(spec: SweepSpec) -> SeriesTable:
    """Evaluate every grid point; rows ordered first parameter outermost."""
    names = [g.name for g in spec.varying]
    grids = [g.values() for g in spec.varying]
    columns = list(names)
    for output in spec.outputs:
        columns.extend(OUTPUT_COLUMNS[output])

    rows = []
    for index, combo in enumerate(itertools.product(*grids)):
        overrides = dict(zip(names, combo))
        try:
            outputs = _evaluate_point(spec, overrides)
        except DomainError as exc:
            where = ", ".join(f"{k}={v}" for k, v in overrides.items())
            raise DomainError(f"sweep point {index} ({where}): {exc}") from exc
        rows.append(tuple(float(v) for v in combo) + tuple(outputs))

    metadata = {
        "scenario": _scenario_metadata(spec.fixed),
        "varying": [
            {
                "name": g.name,
                "scale": g.scale,
                "start": g.start,
                "stop": g.stop,
                "points": g.points,
            }
            for g in spec.varying
        ],
        "outputs": list(spec.outputs),
    }
    if spec.eps_eff is not None:
        metadata["eps_eff"] = spec.eps_eff
    return SeriesTable(tuple(columns), tuple(rows), metadata)


def _num_label(value: float) -> str:
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def _log_points(lo: float, hi: float, count: int) -> list[float]:
    return [float(v) for v in np.logspace(math.log10(lo), math.log10(hi), count)]


def _int_log_points(lo: float, hi: float, count: int) -> list[int]:
    seen: list[int] = []
    for v in np.rint(np.logspace(math.log10(lo), math.log10(hi), count)):
        n = max(1, int(v))
        if not seen or n != seen[-1]:
            seen.append(n)
    return seen


def _pue_vs_phi_table(
    figure: str,
    preset: presets.TechnologyPreset,
    n_points: int,
    t_ambient: float,
    plant: CoolingPlant,
) -> SeriesTable:
    # Leak-free envelope: PUE is size-independent, so n_qubits is arbitrary.
    leak = HeatLeak.from_beta(0.0)
    phis = _log_points(1e-8, 1.0, n_points)
    t_lo, t_hi = preset.t_cold_range
    columns = ["phi"] + [f"pue_t_cold_{_num_label(t)}K" for t in (t_lo, t_hi)]
    rows = []
    for phi in phis:
        cells = [phi]
        for t_cold in (t_lo, t_hi):
            op = OperatingPoint(t_cold=t_cold, t_ambient=t_ambient)
            cells.append(pue(phi, leak, 1, op, plant))
        rows.append(tuple(cells))
    metadata = {
        "figure": figure,
        "panel": preset.name.replace("-", "_"),
        "technology": preset.name,
        "t_cold_range_K": [t_lo, t_hi],
        "t_ambient_K": t_ambient,
        "eta_c": plant.eta_c,
        "fom": plant.fom,
        "beta": 0.0,
    }
    return SeriesTable(tuple(columns), tuple(rows), metadata)


def _power_panels(
    figure: str,
    t_cold: float,
    n_points: int,
    betas: tuple[float, ...],
    t_ambient: float,
    plant: CoolingPlant,
) -> list[SeriesTable]:
    op = OperatingPoint(t_cold=t_cold, t_ambient=t_ambient)
    n_grid = _int_log_points(*_FIG_NP_RANGE, n_points)
    panels = []
    panel_names = iter("abcdefghi")
    base_meta = {
        "figure": figure,
        "t_cold_K": t_cold,
        "t_ambient_K": t_ambient,
        "eta_c": plant.eta_c,
        "fom": plant.fom,
        "betas": list(betas),
    }
    for phi in _FIG_PHIS:
        for quantity, func in (
            ("p_t_star", lambda n, leak: scaled_power(n, phi, leak, op, plant)),
            ("pue", lambda n, leak: pue(phi, leak, n, op, plant)),
        ):
            columns = ["n_qubits"] + [
                f"{quantity}_beta_{_num_label(b)}" for b in betas
            ]
            rows = []
            for n in n_grid:
                cells = [float(n)]
                for beta in betas:
                    cells.append(func(n, HeatLeak.from_beta(beta)))
                rows.append(tuple(cells))
            meta = dict(base_meta, panel=next(panel_names), phi=phi, quantity=quantity)
            panels.append(SeriesTable(tuple(columns), tuple(rows), meta))

        # Fraction panel: fixed machine size, leak ratio on the axis.
        n_fixed = 1000
        columns = ["beta", "f_e", "f_lte", "f_o", "f_ext"]
        rows = []
        for beta in betas:
            report = power_fractions(
                phi, HeatLeak.from_beta(beta), n_fixed, op, plant
            )
            rows.append((beta,) + report.as_tuple())
        meta = dict(
            base_meta,
            panel=next(panel_names),
            phi=phi,
            quantity="fractions",
            n_qubits=n_fixed,
        )
        panels.append(SeriesTable(tuple(columns), tuple(rows), meta))
    return panels


def _volume_table(figure: str, eps_grid: tuple[float, ...], n_points: int) -> SeriesTable:
    n_grid = _int_log_points(1.0, 1e4, n_points)
    columns = ["n_qubits"] + [f"q_volume_eps_{_num_label(e)}" for e in eps_grid]
    rows = []
    for n in n_grid:
        cells = [float(n)]
        for eps in eps_grid:
            cells.append(quantum_volume(n, eps).volume)
        rows.append(tuple(cells))
    metadata = {"figure": figure, "panel": "volume", "eps_grid": list(eps_grid)}
    return SeriesTable(tuple(columns), tuple(rows), metadata)


def _power_vs_volume_tables(
    figure: str,
    t_cold: float,
    n_points: int,
    betas: tuple[float, ...],
    eps_grid: tuple[float, ...],
    t_ambient: float,
    plant: CoolingPlant,
) -> list[SeriesTable]:
    phi = 0.001
    op = OperatingPoint(t_cold=t_cold, t_ambient=t_ambient)
    qv_grid = _log_points(*_FIG_QV_RANGE, n_points)
    columns = ["q_volume"] + [
        f"p_t_star_vs_qv_beta_{_num_label(b)}" for b in betas
    ]
    rows = []
    for q_vol in qv_grid:
        cells = [q_vol]
        for beta in betas:
            cells.append(power_vs_qv(q_vol, phi, beta, op, plant))
        rows.append(tuple(cells))
    meta = {
        "figure": figure,
        "panel": "pstar",
        "phi": phi,
        "t_cold_K": t_cold,
        "t_ambient_K": t_ambient,
        "eta_c": plant.eta_c,
        "fom": plant.fom,
        "betas": list(betas),
    }
    power_table = SeriesTable(tuple(columns), tuple(rows), meta)

    # Ceiling markers: the largest volume reachable at each error rate.
    marker_rows = tuple((eps, 1.0 / eps) for eps in eps_grid)
    marker_meta = {"figure": figure, "panel": "markers", "eps_grid": list(eps_grid)}
    markers = SeriesTable(
        ("eps_eff", "q_volume_max"), marker_rows, marker_meta
    )
    return [power_table, markers]


def figure_data(
    figure_id: str,
    n_points: int = 60,
    eps_grid: tuple[float, ...] = _FIG_EPS,
    betas: tuple[float, ...] = _FIG_BETAS,
) -> list[SeriesTable]:
    """Data series behind the named figure, one table per panel.

    fig3/fig4: leak-free PUE envelopes per technology (integrated and
    laboratory respectively).  fig5/fig6: size scans and fraction panels at
    15 mK and 4.5 K.  fig7: volume versus size per error rate.  fig8/fig9:
    scaled power versus volume at 15 mK and 4.0 K with ceiling markers.
    """
    plant = presets.reference_plant()
    t_ambient = presets.REFERENCE_T_AMBIENT
    if figure_id == "fig3" or figure_id == "fig4":
        status = presets.INTEGRATED if figure_id == "fig3" else presets.LABORATORY
        return [
            _pue_vs_phi_table(figure_id, preset, n_points, t_ambient, plant)
            for preset in presets.builtin_technologies()
            if preset.integration_status == status
        ]
    if figure_id == "fig5":
        return _power_panels(figure_id, 0.015, n_points, betas, t_ambient, plant)
    if figure_id == "fig6":
        return _power_panels(figure_id, 4.5, n_points, betas, t_ambient, plant)
    if figure_id == "fig7":
        return [_volume_table(figure_id, eps_grid, n_points)]
    if figure_id == "fig8":
        return _power_vs_volume_tables(
            figure_id, 0.015, n_points, betas, eps_grid, t_ambient, plant
        )
    if figure_id == "fig9":
        return _power_vs_volume_tables(
            figure_id, 4.0, n_points, betas, eps_grid, t_ambient, plant
        )
    raise DomainError(
        f"unknown figure id {figure_id!r}; choose from {', '.join(FIGURE_IDS)}"
    )
