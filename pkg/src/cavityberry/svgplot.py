"""Self-contained SVG 1.1 rendering of sweep records.

No external references, no timestamps, fixed float formatting: identical
records render to byte-identical files.  One polyline per method with
finite values; numeric points are marked per record, with a distinct
cross glyph for truncation-unconverged points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .sweep import SweepRecord


@dataclass(frozen=True)
class PlotStyle:
    width: int = 640
    height: int = 440
    margin_left: int = 64
    margin_right: int = 20
    margin_top: int = 28
    margin_bottom: int = 48
    title: str = "ground-state Berry phase vs coupling"
    colors: dict[str, str] = field(default_factory=lambda: {
        "numeric": "#1f77b4",
        "variational": "#d62728",
        "oracle": "#2ca02c",
    })


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    span = hi - lo
    raw = span / max(target - 1, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + step * 1e-9:
        ticks.append(0.0 if abs(t) < step * 1e-9 else t)
        t += step
    return ticks


def _px(v: float) -> str:
    return f"{v:.3f}"


def emit_plot(records: list[SweepRecord], style: PlotStyle | None = None) -> str:
    """Render records to SVG text; raises on empty input."""
    if not records:
        raise ValueError("cannot plot an empty record list")
    style = style or PlotStyle()

    series: list[tuple[str, list[tuple[float, float, bool]]]] = []
    for name, getter in (
        ("numeric", lambda r: r.gamma_numeric),
        ("variational", lambda r: r.gamma_variational),
        ("oracle", lambda r: math.nan if r.gamma_oracle is None else r.gamma_oracle),
    ):
        pts = [(r.g, getter(r), r.converged) for r in records if math.isfinite(getter(r))]
        if pts:
            series.append((name, pts))
    if not series:
        raise ValueError("no finite values to plot")

    xs = [r.g for r in records]
    ys = [y for _, pts in series for _, y, _ in pts]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys + [0.0]), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.04 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    plot_w = style.width - style.margin_left - style.margin_right
    plot_h = style.height - style.margin_top - style.margin_bottom

    def sx(x: float) -> float:
        return style.margin_left + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        return style.margin_top + (y_hi - y) / (y_hi - y_lo) * plot_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{style.width}" height="{style.height}" '
        f'viewBox="0 0 {style.width} {style.height}">',
        f'<rect x="0" y="0" width="{style.width}" height="{style.height}" fill="#ffffff"/>',
        f'<text x="{_px(style.width / 2)}" y="18" font-family="sans-serif" font-size="13" '
        f'text-anchor="middle">{style.title}</text>',
    ]

    axis_y = style.margin_top + plot_h
    out.append(
        f'<rect x="{style.margin_left}" y="{style.margin_top}" width="{plot_w}" '
        f'height="{plot_h}" fill="none" stroke="#000000" stroke-width="1"/>'
    )
    for t in _nice_ticks(x_lo, x_hi):
        x = sx(t)
        out.append(f'<line x1="{_px(x)}" y1="{_px(axis_y)}" x2="{_px(x)}" '
                   f'y2="{_px(axis_y + 5)}" stroke="#000000" stroke-width="1"/>')
        out.append(f'<text x="{_px(x)}" y="{_px(axis_y + 18)}" font-family="sans-serif" '
                   f'font-size="11" text-anchor="middle">{t:.6g}</text>')
    for t in _nice_ticks(y_lo, y_hi):
        y = sy(t)
        out.append(f'<line x1="{_px(style.margin_left - 5)}" y1="{_px(y)}" '
                   f'x2="{_px(style.margin_left)}" y2="{_px(y)}" stroke="#000000" stroke-width="1"/>')
        out.append(f'<text x="{_px(style.margin_left - 8)}" y="{_px(y + 4)}" '
                   f'font-family="sans-serif" font-size="11" text-anchor="end">{t:.6g}</text>')
    out.append(f'<text x="{_px(style.margin_left + plot_w / 2)}" y="{_px(style.height - 10)}" '
               f'font-family="sans-serif" font-size="12" text-anchor="middle">g</text>')
    out.append(f'<text x="16" y="{_px(style.margin_top + plot_h / 2)}" font-family="sans-serif" '
               f'font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 16 {_px(style.margin_top + plot_h / 2)})">gamma</text>')

    for name, pts in series:
        color = style.colors[name]
        coords = " ".join(f"{_px(sx(x))},{_px(sy(y))}" for x, y, _ in pts)
        out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                   f'stroke-width="1.5"/>')
        if name == "numeric":
            for x, y, converged in pts:
                cx, cy = sx(x), sy(y)
                if converged:
                    out.append(f'<circle cx="{_px(cx)}" cy="{_px(cy)}" r="2.5" '
                               f'fill="{color}"/>')
                else:
                    # distinct glyph for unconverged truncations
                    out.append(
                        f'<path d="M {_px(cx - 3.5)} {_px(cy - 3.5)} L {_px(cx + 3.5)} '
                        f'{_px(cy + 3.5)} M {_px(cx - 3.5)} {_px(cy + 3.5)} L '
                        f'{_px(cx + 3.5)} {_px(cy - 3.5)}" stroke="{color}" '
                        f'stroke-width="1.5" fill="none"/>'
                    )

    legend_x = style.margin_left + plot_w - 120
    legend_y = style.margin_top + 12
    for i, (name, _) in enumerate(series):
        y = legend_y + 16 * i
        color = style.colors[name]
        out.append(f'<line x1="{_px(legend_x)}" y1="{_px(y - 4)}" x2="{_px(legend_x + 22)}" '
                   f'y2="{_px(y - 4)}" stroke="{color}" stroke-width="1.5"/>')
        out.append(f'<text x="{_px(legend_x + 28)}" y="{_px(y)}" font-family="sans-serif" '
                   f'font-size="11">{name}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
