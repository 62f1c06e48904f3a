"""Report rendering: markdown and CSV tables, SVG line charts, output files.

Every emitter is deterministic byte-for-byte for a given ResultSet; numbers
are formatted to six decimal places so rendered tables are stable golden
artifacts.
"""

from __future__ import annotations

import csv
import io
import json
import math
from datetime import date
from pathlib import Path
from typing import Sequence

from .experiment import (
    CausalityRow,
    CorrelationRow,
    EMOJI_NAME,
    LABELS_NAME,
    LEXICON_NAME,
    PRICE_NAME,
    ResultSet,
    TRENDS_NAME,
    VOLUME_NAME,
)
from .series import DailySeries

_METHOD_DISPLAY = {"pearson": "Pearson", "kendall": "Kendall/Tau"}
_METHOD_PARSE = {v: k for k, v in _METHOD_DISPLAY.items()}

CORRELATION_HEADER = ("Type", "Shifted", "Value", "Correlation", "Stationary")
CAUSALITY_HEADER = ("Cause", "Effect", "p", "Stationary", "Shifted", "Lag", "F")

DEGENERATE = "degenerate"

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(value: float | None) -> str:
    if value is None:
        return DEGENERATE
    if math.isinf(value):
        return "inf"
    text = f"{value:.6f}"
    return "0.000000" if text == "-0.000000" else text


def _fmt_bool(flag: bool) -> str:
    return "true" if flag else "false"


def _parse_bool(text: str) -> bool:
    return {"true": True, "false": False}[text]


def _parse_number(text: str) -> float | None:
    if text == DEGENERATE:
        return None
    if text == "inf":
        return math.inf
    return float(text)


def _correlation_cells(row: CorrelationRow) -> tuple[str, ...]:
    return (
        _METHOD_DISPLAY[row.method],
        _fmt_bool(row.shifted),
        row.signal,
        _fmt(row.value),
        _fmt_bool(row.stationary),
    )


def _causality_cells(row: CausalityRow) -> tuple[str, ...]:
    return (
        row.cause,
        row.effect,
        _fmt(row.p_value),
        _fmt_bool(row.stationary),
        _fmt_bool(row.shifted),
        DEGENERATE if row.lag is None else str(row.lag),
        _fmt(row.f_stat),
    )


def _markdown_table(header: Sequence[str], rows: list[tuple[str, ...]]) -> str:
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join(" --- " for _ in header) + "|",
    ]
    lines += ["| " + " | ".join(cells) + " |" for cells in rows]
    return "\n".join(lines)


def render_markdown(rs: ResultSet) -> str:
    """Markdown report with the correlation and causality tables."""
    cfg = rs.provenance.config
    parts = [
        f"# Stock analysis report: {rs.ticker}",
        "",
        f"Window: {cfg['start']} to {cfg['end']}. "
        f"Alignment: {cfg['align']}. Aggregation: {cfg['agg']}. "
        f"Max lag: {cfg['maxlag']}.",
        "",
        "## Correlation",
        "",
        _markdown_table(
            CORRELATION_HEADER, [_correlation_cells(r) for r in rs.correlations]
        ),
        "",
        "## Granger causality",
        "",
        _markdown_table(
            CAUSALITY_HEADER, [_causality_cells(r) for r in rs.causality]
        ),
        "",
    ]
    return "\n".join(parts)


def render_csv(rs: ResultSet) -> str:
    """Both tables in one CSV document, separated by a blank line."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CORRELATION_HEADER)
    for row in rs.correlations:
        writer.writerow(_correlation_cells(row))
    buffer.write("\n")
    writer.writerow(CAUSALITY_HEADER)
    for row in rs.causality:
        writer.writerow(_causality_cells(row))
    return buffer.getvalue()


def parse_report_csv(
    text: str,
) -> tuple[tuple[CorrelationRow, ...], tuple[CausalityRow, ...]]:
    """Inverse of render_csv (values at the rendered 6-decimal precision)."""
    sections = text.split("\n\n")
    if len(sections) != 2:
        raise ValueError("expected two CSV sections separated by a blank line")
    corr_rows = []
    reader = csv.reader(io.StringIO(sections[0]))
    header = tuple(next(reader))
    if header != CORRELATION_HEADER:
        raise ValueError(f"bad correlation header: {header}")
    for cells in reader:
        corr_rows.append(
            CorrelationRow(
                _METHOD_PARSE[cells[0]],
                _parse_bool(cells[1]),
                _parse_bool(cells[4]),
                cells[2],
                _parse_number(cells[3]),
            )
        )
    caus_rows = []
    reader = csv.reader(io.StringIO(sections[1]))
    header = tuple(next(reader))
    if header != CAUSALITY_HEADER:
        raise ValueError(f"bad causality header: {header}")
    for cells in reader:
        caus_rows.append(
            CausalityRow(
                cells[0],
                cells[1],
                _parse_number(cells[2]),
                _parse_bool(cells[3]),
                _parse_bool(cells[4]),
                None if cells[5] == DEGENERATE else int(cells[5]),
                _parse_number(cells[6]),
            )
        )
    return tuple(corr_rows), tuple(caus_rows)


def _normalize(values: Sequence[float]) -> list[float]:
    lo, hi = min(values), max(values)
    if hi == lo:
        return [0.5] * len(values)
    return [(v - lo) / (hi - lo) for v in values]


def chart_svg(
    series: Sequence[tuple[str, DailySeries]], title: str = ""
) -> str:
    """Multi-line SVG chart; each series min-max normalized to [0, 1].

    Incommensurate units co-plot on one axis; a constant series renders as
    a horizontal line at the 0.5 midline.
    """
    if not series:
        raise ValueError("no series to chart")
    width, height = 860, 420
    left, right, top, bottom = 50, 20, 46, 40
    plot_w = width - left - right
    plot_h = height - top - bottom

    all_dates = [d for _, s in series for d in s.dates]
    lo_ord, hi_ord = min(all_dates).toordinal(), max(all_dates).toordinal()
    span = max(1, hi_ord - lo_ord)

    def x_px(d: date) -> float:
        return left + plot_w * (d.toordinal() - lo_ord) / span

    def y_px(v: float) -> float:
        return top + plot_h * (1.0 - v)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{left}" y="16" font-size="14" font-weight="bold">{_xml(title)}</text>'
        )
    # frame and y extremes (normalized scale)
    parts.append(
        f'<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#888888" stroke-width="1"/>'
    )
    parts.append(f'<text x="{left - 28}" y="{top + 8:.0f}">1</text>')
    parts.append(f'<text x="{left - 28}" y="{top + plot_h:.0f}">0</text>')

    # x tick labels: up to five evenly spaced dates
    n_ticks = min(5, span + 1)
    for i in range(n_ticks):
        tick_ord = lo_ord + round(i * span / max(1, n_ticks - 1)) if n_ticks > 1 else lo_ord
        tick = date.fromordinal(tick_ord)
        x = x_px(tick)
        parts.append(
            f'<line x1="{x:.2f}" y1="{top + plot_h}" x2="{x:.2f}" '
            f'y2="{top + plot_h + 4}" stroke="#888888"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{top + plot_h + 18}" text-anchor="middle">'
            f"{tick.isoformat()}</text>"
        )

    # legend + polylines
    legend_x = left
    for idx, (name, s) in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        norm = _normalize(s.values)
        points = " ".join(
            f"{x_px(d):.2f},{y_px(v):.2f}" for d, v in zip(s.dates, norm)
        )
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{points}"/>'
        )
        parts.append(
            f'<line x1="{legend_x}" y1="{top - 14}" x2="{legend_x + 18}" '
            f'y2="{top - 14}" stroke="{color}" stroke-width="3"/>'
        )
        parts.append(
            f'<text x="{legend_x + 22}" y="{top - 10}">{_xml(name)}</text>'
        )
        legend_x += 30 + 7 * len(name)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _xml(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def render_chart(
    series: Sequence[tuple[str, DailySeries]], path: str | Path, title: str = ""
) -> None:
    Path(path).write_text(chart_svg(series, title), encoding="utf-8")


def write_report(rs: ResultSet, out_dir: str | Path) -> list[str]:
    """Write report.md, report.csv, results.json, provenance.json and charts.

    Returns the written paths relative to out_dir.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[str] = []

    (out / "report.md").write_text(render_markdown(rs), encoding="utf-8")
    written.append("report.md")
    (out / "report.csv").write_text(render_csv(rs), encoding="utf-8")
    written.append("report.csv")
    (out / "results.json").write_text(
        json.dumps(rs.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    written.append("results.json")
    (out / "provenance.json").write_text(
        json.dumps(
            {
                "config": rs.provenance.config,
                "config_digest": rs.provenance.config_digest,
                "inputs": rs.provenance.inputs,
            },
            indent=2,
            sort_keys=True,
        )
        + "\n",
        encoding="utf-8",
    )
    written.append("provenance.json")

    series_map = dict(rs.chart_series)
    if series_map:
        charts = out / "charts"
        charts.mkdir(exist_ok=True)
        overview = [
            (name, series_map[name])
            for name in (PRICE_NAME, VOLUME_NAME, TRENDS_NAME)
            if name in series_map
        ]
        if overview:
            render_chart(
                overview, charts / "overview.svg", f"{rs.ticker}: activity vs price"
            )
            written.append("charts/overview.svg")
        sentiment = [
            (name, series_map[name])
            for name in (PRICE_NAME, LEXICON_NAME, EMOJI_NAME, LABELS_NAME)
            if name in series_map
        ]
        if len(sentiment) > 1:
            render_chart(
                sentiment, charts / "sentiment.svg", f"{rs.ticker}: sentiment vs price"
            )
            written.append("charts/sentiment.svg")
    return written
