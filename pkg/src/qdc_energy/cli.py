"""Command-line interface: compute, sweep, qv, figures, presets, explore."""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

from . import presets as presets_mod
from .config import (
    Provenance,
    default_config_path,
    load_config_file,
    resolve_scenario,
    scenario_to_config,
)
from .emit import (
    format_cell,
    render_svg,
    table_to_json,
    write_csv,
    write_json,
    write_table_csv,
)
from .explore import (
    CRITERIA,
    BudgetQuery,
    CrossoverQuery,
    find_crossover,
    max_qubits_in_budget,
    rank_technologies,
)
from .model import DomainError, Scenario
from .sweep import (
    FIGURE_IDS,
    OUTPUT_COLUMNS,
    GridSpec,
    SeriesTable,
    SweepSpec,
    figure_data,
    run_sweep,
)
from .volume import power_vs_qv, quantum_volume

_COMPUTE_COLUMNS = (
    "n_qubits",
    "phi",
    "beta",
    "q_per_qubit_W",
    "t_cold_K",
    "t_ambient_K",
    "eta_c",
    "fom",
    "p1_W",
    "p2_W",
    "qo_W",
    "q1_W",
    "w1_W",
    "w2_W",
    "ws_W",
    "pt_W",
    "pt_star",
    "pue",
    "f_e",
    "f_lte",
    "f_o",
    "f_ext",
)

_SWEEP_KEYS = {"varying", "outputs", "eps_eff"}
_GRID_KEYS = {"name", "scale", "start", "stop", "points"}
_EXPLORE_KEYS = {
    "kind",
    "criterion",
    "free",
    "bracket",
    "q_volume",
    "power_budget_W",
    "q_per_qubit_W",
    "eps_eff",
}
_CATALOG_KEYS = {"technologies", "efficiencies"}


def _add_scenario_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("scenario")
    group.add_argument("--config", help="JSON config file (default: $QDC_CONFIG)")
    group.add_argument("--preset", help="technology preset name (sets t_cold)")
    group.add_argument("--efficiency", help="efficiency preset name (sets eta_c)")
    group.add_argument("--np", type=int, help="number of physical qubits")
    group.add_argument("--phi", type=float, help="cryogenic share of electronic power")
    group.add_argument("--q", type=float, help="electronic power per qubit, W")
    group.add_argument("--beta", type=float, help="abstract leak ratio (0 = insulated)")
    group.add_argument("--u", type=float, help="vessel heat transfer coefficient, W/m^2K")
    group.add_argument("--c1", type=float, help="vessel area shape factor")
    group.add_argument("--vq", type=float, help="cryostat volume per qubit, m^3")
    group.add_argument("--q1", type=float, help="in-cryostat power per qubit, W")
    group.add_argument("--tc", type=float, help="cold temperature, K")
    group.add_argument("--to", type=float, help="ambient temperature, K")
    group.add_argument("--eta-c", type=float, dest="eta_c", help="fraction of Carnot COP")
    group.add_argument("--fom", type=float, help="ambient cooling figure of merit")
    group.add_argument(
        "--explain",
        action="store_true",
        help="print the source of every resolved parameter to stderr",
    )


def _add_output_flags(parser: argparse.ArgumentParser, svg: bool = False) -> None:
    parser.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format"
    )
    parser.add_argument("--out", help="write to this path instead of stdout")
    if svg:
        parser.add_argument(
            "--svg", help="additionally render a minimal line chart to this path"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdc",
        description="Energy model for cryogenically cooled quantum data centers.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    compute = sub.add_parser(
        "compute", help="power breakdown, PUE, and power fractions for one scenario"
    )
    _add_scenario_flags(compute)
    _add_output_flags(compute)
    compute.set_defaults(func=cmd_compute)

    sweep = sub.add_parser("sweep", help="evaluate the model over a parameter grid")
    _add_scenario_flags(sweep)
    sweep.add_argument("--var", help="varying parameter name")
    sweep.add_argument("--scale", choices=("linear", "log"), default="log")
    sweep.add_argument("--start", type=float)
    sweep.add_argument("--stop", type=float)
    sweep.add_argument("--points", type=int, default=60)
    sweep.add_argument(
        "--output",
        action="append",
        choices=sorted(OUTPUT_COLUMNS),
        help="output quantity (repeatable)",
    )
    sweep.add_argument("--eps", type=float, help="effective error rate for q_volume")
    _add_output_flags(sweep, svg=True)
    sweep.set_defaults(func=cmd_sweep)

    qv = sub.add_parser("qv", help="quantum volume, peak width, and optional power")
    _add_scenario_flags(qv)
    qv.add_argument("--eps", type=float, required=True, help="effective error rate")
    qv.add_argument(
        "--power",
        action="store_true",
        help="also report scaled power at the achieved volume",
    )
    _add_output_flags(qv)
    qv.set_defaults(func=cmd_qv)

    figures = sub.add_parser(
        "figures", help="emit the bundled figure datasets, one file per panel"
    )
    figures.add_argument("figure", choices=FIGURE_IDS + ("all",))
    figures.add_argument("--out", default=".", help="output directory")
    figures.add_argument("--points", type=int, default=60, help="grid points per axis")
    figures.add_argument("--format", choices=("csv", "json"), default="csv")
    figures.add_argument(
        "--svg", help="directory for per-panel line charts (optional)"
    )
    figures.set_defaults(func=cmd_figures)

    presets = sub.add_parser("presets", help="list builtin or user parameter catalogs")
    presets.add_argument("--catalog", help="JSON catalog file to list instead")
    _add_output_flags(presets)
    presets.set_defaults(func=cmd_presets)

    explore = sub.add_parser("explore", help="crossover, ranking, and budget searches")
    esub = explore.add_subparsers(dest="explore_command", metavar="query")

    crossover = esub.add_parser(
        "crossover", help="balance point of two power shares"
    )
    _add_scenario_flags(crossover)
    crossover.add_argument("--criterion", choices=CRITERIA)
    crossover.add_argument("--free", choices=("phi", "beta"))
    crossover.add_argument("--lo", type=float, help="bracket lower endpoint")
    crossover.add_argument("--hi", type=float, help="bracket upper endpoint")
    _add_output_flags(crossover)
    crossover.set_defaults(func=cmd_explore_crossover)

    rank = esub.add_parser(
        "rank", help="order technologies by power at a target quantum volume"
    )
    _add_scenario_flags(rank)
    rank.add_argument("--qvolume", type=float, help="target quantum volume")
    rank.add_argument("--catalog", help="JSON catalog of technologies to rank")
    _add_output_flags(rank)
    rank.set_defaults(func=cmd_explore_rank)

    budget = esub.add_parser(
        "budget", help="largest machine fitting a facility power budget"
    )
    _add_scenario_flags(budget)
    budget.add_argument("--budget-w", type=float, dest="budget_w", help="power budget, W")
    budget.add_argument("--eps", type=float, help="effective error rate")
    _add_output_flags(budget)
    budget.set_defaults(func=cmd_explore_budget)

    return parser


def _flag_dict(args: argparse.Namespace) -> dict:
    names = (
        "preset",
        "efficiency",
        "np",
        "phi",
        "q",
        "beta",
        "u",
        "c1",
        "vq",
        "q1",
        "tc",
        "to",
        "eta_c",
        "fom",
    )
    return {name: getattr(args, name, None) for name in names}


def _load_config(args: argparse.Namespace) -> dict:
    path = default_config_path(getattr(args, "config", None))
    if path is None:
        return {}
    return load_config_file(path)


def _resolve(args: argparse.Namespace) -> tuple[Scenario, Provenance, dict]:
    config = _load_config(args)
    scenario, prov = resolve_scenario(config, _flag_dict(args))
    if getattr(args, "explain", False):
        for line in prov.explain_lines():
            print(line, file=sys.stderr)
    return scenario, prov, config


def _emit_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _csv_text(columns, rows) -> str:
    buffer = io.StringIO()
    write_csv(columns, rows, buffer)
    return buffer.getvalue()


def _json_text(document: dict) -> str:
    buffer = io.StringIO()
    write_json(document, buffer)
    return buffer.getvalue()


def _emit_table(table: SeriesTable, args: argparse.Namespace) -> None:
    if args.format == "json":
        buffer = io.StringIO()
        write_json(table_to_json(table), buffer)
        _emit_text(buffer.getvalue(), args.out)
    else:
        buffer = io.StringIO()
        write_table_csv(table, buffer)
        _emit_text(buffer.getvalue(), args.out)
    svg_path = getattr(args, "svg", None)
    if svg_path:
        Path(svg_path).write_text(
            render_svg(table, title=table.metadata.get("title", "")), encoding="utf-8"
        )


def cmd_compute(args: argparse.Namespace) -> int:
    scenario, _, _ = _resolve(args)
    arch = scenario.architecture
    op = scenario.operating_point
    plant = scenario.cooling_plant
    beta = scenario.leak.resolve_beta(op.t_ambient)
    fractions = scenario.fractions()
    results: dict[str, float | int | None] = {
        "n_qubits": arch.n_qubits,
        "phi": arch.phi,
        "beta": beta,
        "q_per_qubit_W": arch.q_per_qubit,
        "t_cold_K": op.t_cold,
        "t_ambient_K": op.t_ambient,
        "eta_c": plant.eta_c,
        "fom": plant.fom,
    }
    if arch.q_per_qubit is not None:
        breakdown = scenario.breakdown()
        results.update(
            {
                "p1_W": breakdown.p1_cryo_electronics,
                "p2_W": breakdown.p2_ambient_electronics,
                "qo_W": breakdown.q_o_leak,
                "q1_W": breakdown.q1_cryo_total,
                "w1_W": breakdown.w1_cryo_cooling,
                "w2_W": breakdown.w2_ambient_cooling,
                "ws_W": breakdown.w_s_total_cooling,
                "pt_W": breakdown.p_t_total,
            }
        )
    else:
        results.update({k: None for k in ("p1_W", "p2_W", "qo_W", "q1_W",
                                          "w1_W", "w2_W", "ws_W", "pt_W")})
    results.update(
        {
            "pt_star": scenario.scaled_power(),
            "pue": scenario.pue(),
            "f_e": fractions.f_electronics,
            "f_lte": fractions.f_cryo_electronics_cooling,
            "f_o": fractions.f_leak_cooling,
            "f_ext": fractions.f_ambient_cooling,
        }
    )
    if args.format == "json":
        document = scenario_to_config(scenario)
        document["results"] = {
            key: results[key]
            for key in _COMPUTE_COLUMNS
            if key not in ("n_qubits", "phi", "q_per_qubit_W",
                           "t_cold_K", "t_ambient_K", "eta_c", "fom")
        }
        _emit_text(_json_text(document), args.out)
    else:
        row = [results[name] for name in _COMPUTE_COLUMNS]
        _emit_text(_csv_text(_COMPUTE_COLUMNS, [row]), args.out)
    return 0


def _sweep_spec_from_inputs(
    args: argparse.Namespace, config: dict, scenario: Scenario
) -> SweepSpec:
    block = config.get("sweep", {})
    if block:
        unknown = sorted(set(block) - _SWEEP_KEYS)
        if unknown:
            raise DomainError(f"unknown key(s) in sweep: {', '.join(unknown)}")
    varying: list[GridSpec] = []
    if args.var is not None:
        if args.start is None or args.stop is None:
            raise DomainError("--var needs --start and --stop")
        varying.append(
            GridSpec(args.var, args.scale, args.start, args.stop, args.points)
        )
    else:
        for grid in block.get("varying", []):
            unknown = sorted(set(grid) - _GRID_KEYS)
            if unknown:
                raise DomainError(
                    f"unknown key(s) in sweep grid: {', '.join(unknown)}"
                )
            try:
                varying.append(
                    GridSpec(
                        grid["name"],
                        grid.get("scale", "linear"),
                        grid["start"],
                        grid["stop"],
                        grid["points"],
                    )
                )
            except KeyError as exc:
                raise DomainError(f"sweep grid missing key {exc}") from exc
    if not varying:
        raise DomainError("no sweep definition: give --var or a config sweep block")
    outputs = tuple(args.output) if args.output else tuple(block.get("outputs", ()))
    if not outputs:
        raise DomainError("no sweep outputs: give --output or sweep.outputs")
    eps = args.eps if args.eps is not None else block.get("eps_eff")
    return SweepSpec(
        varying=tuple(varying), fixed=scenario, outputs=outputs, eps_eff=eps
    )


def cmd_sweep(args: argparse.Namespace) -> int:
    scenario, _, config = _resolve(args)
    spec = _sweep_spec_from_inputs(args, config, scenario)
    table = run_sweep(spec)
    _emit_table(table, args)
    return 0


def cmd_qv(args: argparse.Namespace) -> int:
    scenario, _, _ = _resolve(args)
    n = scenario.architecture.n_qubits
    result = quantum_volume(n, args.eps)
    columns = ["n_qubits", "eps_eff", "volume", "n_argmax", "n_peak"]
    row = [float(n), args.eps, result.volume, float(result.n_argmax), result.n_peak]
    metadata = {"n_qubits": n, "eps_eff": args.eps}
    if args.power:
        beta = scenario.leak.resolve_beta(scenario.operating_point.t_ambient)
        power = power_vs_qv(
            result.volume,
            scenario.architecture.phi,
            beta,
            scenario.operating_point,
            scenario.cooling_plant,
        )
        columns.append("p_t_star_vs_qv")
        row.append(power)
    table = SeriesTable(tuple(columns), (tuple(row),), metadata)
    _emit_table(table, args)
    return 0


def cmd_figures(args: argparse.Namespace) -> int:
    ids = FIGURE_IDS if args.figure == "all" else (args.figure,)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    svg_dir = Path(args.svg) if args.svg else None
    if svg_dir is not None:
        svg_dir.mkdir(parents=True, exist_ok=True)
    for figure_id in ids:
        for table in figure_data(figure_id, n_points=args.points):
            stem = f"{figure_id}_{table.metadata['panel']}"
            if args.format == "json":
                path = out_dir / f"{stem}.json"
                path.write_text(_json_text(table_to_json(table)), encoding="utf-8")
            else:
                path = out_dir / f"{stem}.csv"
                buffer = io.StringIO()
                write_table_csv(table, buffer)
                path.write_text(buffer.getvalue(), encoding="utf-8")
            print(path)
            if svg_dir is not None:
                svg_path = svg_dir / f"{stem}.svg"
                svg_path.write_text(
                    render_svg(table, title=stem), encoding="utf-8"
                )
    return 0


def _read_catalog(path: str) -> tuple[list, list]:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot read catalog {path}: {exc}") from exc
    try:
        document = json.loads(raw)
    except ValueError as exc:
        raise DomainError(f"catalog {path} is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise DomainError("catalog must be a JSON object")
    unknown = sorted(set(document) - _CATALOG_KEYS)
    if unknown:
        raise DomainError(f"unknown key(s) in catalog: {', '.join(unknown)}")
    technologies = [
        presets_mod.TechnologyPreset.from_dict(item)
        for item in document.get("technologies", [])
    ]
    efficiencies = [
        presets_mod.EfficiencyPreset.from_dict(item)
        for item in document.get("efficiencies", [])
    ]
    return technologies, efficiencies


def cmd_presets(args: argparse.Namespace) -> int:
    if args.catalog:
        technologies, efficiencies = _read_catalog(args.catalog)
        u_range = None
    else:
        technologies = presets_mod.builtin_technologies()
        efficiencies = presets_mod.builtin_efficiencies()
        u_range = presets_mod.builtin_u_range()
    if args.format == "json":
        document = {
            "technologies": [p.to_dict() for p in technologies],
            "efficiencies": [p.to_dict() for p in efficiencies],
        }
        if u_range is not None:
            document["u_range_W_m2K"] = list(u_range)
            document["reference"] = {
                "fom": presets_mod.REFERENCE_FOM,
                "t_ambient_K": presets_mod.REFERENCE_T_AMBIENT,
            }
        _emit_text(_json_text(document), args.out)
        return 0
    columns = (
        "kind",
        "name",
        "t_cold_min_K",
        "t_cold_max_K",
        "t_cold_default_K",
        "integration_status",
        "eta_c",
        "u_min_W_m2K",
        "u_max_W_m2K",
        "note",
    )
    rows = []
    for p in technologies:
        rows.append(
            (
                "technology",
                p.name,
                p.t_cold_range[0],
                p.t_cold_range[1],
                p.t_cold_default,
                p.integration_status,
                None,
                None,
                None,
                p.provenance_note,
            )
        )
    for p in efficiencies:
        rows.append(
            ("efficiency", p.name, None, None, None, None, p.eta_c, None, None,
             p.provenance_note)
        )
    if u_range is not None:
        rows.append(
            ("u_range", "vessel-u", None, None, None, None, None,
             u_range[0], u_range[1], "heat transfer coefficient range")
        )
    _emit_text(_csv_text(columns, rows), args.out)
    return 0


def _explore_block(config: dict, kind: str) -> dict:
    block = config.get("explore", {})
    if not block:
        return {}
    unknown = sorted(set(block) - _EXPLORE_KEYS)
    if unknown:
        raise DomainError(f"unknown key(s) in explore: {', '.join(unknown)}")
    if block.get("kind") not in (None, kind):
        return {}
    return block


def cmd_explore_crossover(args: argparse.Namespace) -> int:
    scenario, _, config = _resolve(args)
    block = _explore_block(config, "crossover")
    criterion = args.criterion or block.get("criterion")
    free = args.free or block.get("free")
    bracket = block.get("bracket")
    lo = args.lo if args.lo is not None else (bracket[0] if bracket else None)
    hi = args.hi if args.hi is not None else (bracket[1] if bracket else None)
    if criterion is None or free is None or lo is None or hi is None:
        raise DomainError(
            "crossover needs --criterion, --free, --lo, and --hi "
            "(or an explore config block)"
        )
    query = CrossoverQuery(
        criterion=criterion, free=free, scenario=scenario, bracket=(lo, hi)
    )
    root = find_crossover(query)
    if args.format == "json":
        _emit_text(
            _json_text({"criterion": criterion, "free": free, "root": root}),
            args.out,
        )
    else:
        _emit_text(
            _csv_text(("criterion", "free", "root"), [(criterion, free, root)]),
            args.out,
        )
    return 0


def cmd_explore_rank(args: argparse.Namespace) -> int:
    scenario, _, config = _resolve(args)
    block = _explore_block(config, "rank")
    q_volume = args.qvolume if args.qvolume is not None else block.get("q_volume")
    if q_volume is None:
        raise DomainError("rank needs --qvolume (or explore.q_volume in config)")
    if args.catalog:
        technologies, _ = _read_catalog(args.catalog)
    else:
        technologies = presets_mod.builtin_technologies()
    beta = scenario.leak.resolve_beta(scenario.operating_point.t_ambient)
    ranked = rank_technologies(
        q_volume,
        scenario.architecture.phi,
        beta,
        technologies,
        scenario.cooling_plant,
        t_ambient=scenario.operating_point.t_ambient,
    )
    defaults = {p.name: p.t_cold_default for p in technologies}
    if args.format == "json":
        document = {
            "q_volume": q_volume,
            "ranking": [
                {"rank": i + 1, "name": name, "t_cold_K": defaults[name],
                 "p_t_star": power}
                for i, (name, power) in enumerate(ranked)
            ],
        }
        _emit_text(_json_text(document), args.out)
    else:
        rows = [
            (i + 1, name, defaults[name], power)
            for i, (name, power) in enumerate(ranked)
        ]
        _emit_text(
            _csv_text(("rank", "name", "t_cold_K", "p_t_star"), rows), args.out
        )
    return 0


def cmd_explore_budget(args: argparse.Namespace) -> int:
    scenario, _, config = _resolve(args)
    block = _explore_block(config, "budget")
    budget = args.budget_w if args.budget_w is not None else block.get("power_budget_W")
    eps = args.eps if args.eps is not None else block.get("eps_eff")
    q = scenario.architecture.q_per_qubit
    if q is None:
        q = block.get("q_per_qubit_W")
    if budget is None or eps is None or q is None:
        raise DomainError(
            "budget needs --budget-w, --eps, and --q (or an explore config block)"
        )
    query = BudgetQuery(
        power_budget=budget, q_per_qubit=q, eps_eff=eps, scenario=scenario
    )
    result = max_qubits_in_budget(query)
    if args.format == "json":
        document = {
            "power_budget_W": budget,
            "max_qubits": result.max_qubits,
            "power_W": result.power_w,
            "q_volume": result.q_volume,
        }
        _emit_text(_json_text(document), args.out)
    else:
        _emit_text(
            _csv_text(
                ("max_qubits", "power_W", "q_volume"),
                [(result.max_qubits, result.power_w, result.q_volume)],
            ),
            args.out,
        )
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "command", None) is None:
        parser.print_usage(sys.stderr)
        return 2
    if args.command == "explore" and getattr(args, "explore_command", None) is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
