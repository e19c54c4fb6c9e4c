"""CSV, JSON, and minimal SVG emission for tables and single-row reports."""

from __future__ import annotations

import csv
import json
import math
from typing import IO, Sequence

from .sweep import SeriesTable

# Series colors for the SVG line chart; cycled when there are more series.
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def format_cell(value) -> str:
    """Locale-independent cell text; floats keep full round-trip precision."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(columns: Sequence[str], rows, stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(cell) for cell in row])


def write_table_csv(table: SeriesTable, stream: IO[str]) -> None:
    write_csv(table.columns, table.rows, stream)


def table_to_json(table: SeriesTable) -> dict:
    return {
        "columns": list(table.columns),
        "rows": [list(row) for row in table.rows],
        "metadata": table.metadata,
    }


def write_json(document: dict, stream: IO[str]) -> None:
    json.dump(document, stream, indent=2)
    stream.write("\n")


def _axis_scale(values: list[float]) -> str:
    positive = [v for v in values if v > 0.0]
    if len(positive) != len(values) or not positive:
        return "linear"
    if max(positive) / min(positive) >= 1e3:
        return "log"
    return "linear"


def _transform(value: float, scale: str) -> float:
    return math.log10(value) if scale == "log" else value


def _ticks(lo: float, hi: float, scale: str) -> list[float]:
    if scale == "log":
        first = math.ceil(lo - 1e-9)
        last = math.floor(hi + 1e-9)
        step = max(1, (last - first) // 8 + 1)
        return [float(d) for d in range(first, last + 1, step)]
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * i / 4.0 for i in range(5)]


def _tick_label(value: float, scale: str) -> str:
    if scale == "log":
        return f"1e{int(value)}"
    return f"{value:.4g}"


def render_svg(table: SeriesTable, title: str = "") -> str:
    """Minimal line chart: first column on x, one polyline per other column."""
    width, height = 800.0, 520.0
    left, right, top, bottom = 70.0, 180.0, 40.0, 50.0
    plot_w = width - left - right
    plot_h = height - top - bottom

    x_name = table.columns[0]
    series_names = table.columns[1:]
    x_values = table.column(x_name)
    x_scale = _axis_scale(x_values)
    y_values = [cell for name in series_names for cell in table.column(name)]
    y_scale = _axis_scale(y_values)

    xs = [_transform(v, x_scale) for v in x_values]
    ys = [_transform(v, y_scale) for v in y_values]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    def px(value: float) -> float:
        return left + (value - x_lo) / (x_hi - x_lo) * plot_w

    def py(value: float) -> float:
        return top + plot_h - (value - y_lo) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        '<style>text{font-family:sans-serif;font-size:11px;fill:#222}'
        ".axis{stroke:#222;stroke-width:1}.grid{stroke:#ddd;stroke-width:0.5}"
        "</style>",
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{left:.1f}" y="{top - 16:.1f}" font-size="14">{title}</text>'
        )

    for tick in _ticks(x_lo, x_hi, x_scale):
        x = px(tick)
        parts.append(
            f'<line class="grid" x1="{x:.2f}" y1="{top:.2f}" '
            f'x2="{x:.2f}" y2="{top + plot_h:.2f}"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{top + plot_h + 16:.2f}" '
            f'text-anchor="middle">{_tick_label(tick, x_scale)}</text>'
        )
    for tick in _ticks(y_lo, y_hi, y_scale):
        y = py(tick)
        parts.append(
            f'<line class="grid" x1="{left:.2f}" y1="{y:.2f}" '
            f'x2="{left + plot_w:.2f}" y2="{y:.2f}"/>'
        )
        parts.append(
            f'<text x="{left - 6:.2f}" y="{y + 4:.2f}" '
            f'text-anchor="end">{_tick_label(tick, y_scale)}</text>'
        )

    parts.append(
        f'<line class="axis" x1="{left:.2f}" y1="{top + plot_h:.2f}" '
        f'x2="{left + plot_w:.2f}" y2="{top + plot_h:.2f}"/>'
    )
    parts.append(
        f'<line class="axis" x1="{left:.2f}" y1="{top:.2f}" '
        f'x2="{left:.2f}" y2="{top + plot_h:.2f}"/>'
    )
    parts.append(
        f'<text x="{left + plot_w / 2:.1f}" y="{height - 12:.1f}" '
        f'text-anchor="middle">{x_name}'
        f'{" (log10)" if x_scale == "log" else ""}</text>'
    )

    for index, name in enumerate(series_names):
        color = _PALETTE[index % len(_PALETTE)]
        points = " ".join(
            f"{px(_transform(x, x_scale)):.2f},{py(_transform(y, y_scale)):.2f}"
            for x, y in zip(x_values, table.column(name))
        )
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{points}"/>'
        )
        legend_y = top + 14.0 * index
        parts.append(
            f'<line x1="{left + plot_w + 10:.1f}" y1="{legend_y:.1f}" '
            f'x2="{left + plot_w + 30:.1f}" y2="{legend_y:.1f}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{left + plot_w + 34:.1f}" y="{legend_y + 4:.1f}">{name}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
