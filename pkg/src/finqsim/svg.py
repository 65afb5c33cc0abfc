"""Minimal deterministic SVG emitter: line plots and heatmaps with a fixed
800x600 viewBox, embedded axis labels, and a fixed colormap.  No external
plotting dependency, no timestamps; identical input produces identical
bytes.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

VIEW_W, VIEW_H = 800, 600
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 80, 30, 40, 60

# Fixed 9-anchor blue->green->yellow colormap, linearly interpolated.
COLORMAP_ANCHORS = (
    (68, 1, 84), (72, 40, 120), (62, 74, 137), (49, 104, 142),
    (38, 130, 142), (31, 158, 137), (53, 183, 121), (109, 205, 89),
    (253, 231, 37),
)


def _check_finite(arr, name):
    a = np.asarray(arr, dtype=float)
    bad = np.argwhere(~np.isfinite(a))
    if bad.size:
        idx = ", ".join(str(tuple(int(v) for v in b)) for b in bad[:10])
        raise DomainError(f"non-finite {name} values at indices {idx}")
    return a


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def color_at(frac: float) -> str:
    """Hex color at position frac in [0, 1] of the fixed colormap."""
    f = min(max(frac, 0.0), 1.0) * (len(COLORMAP_ANCHORS) - 1)
    i = min(int(f), len(COLORMAP_ANCHORS) - 2)
    t = f - i
    c0, c1 = COLORMAP_ANCHORS[i], COLORMAP_ANCHORS[i + 1]
    rgb = tuple(int(round(a + t * (b - a))) for a, b in zip(c0, c1))
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def _axis_ticks(lo: float, hi: float, n: int = 5):
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _header(title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEW_W} {VIEW_H}">',
        f'<rect width="{VIEW_W}" height="{VIEW_H}" fill="white"/>',
        f'<text x="{VIEW_W / 2:.0f}" y="24" text-anchor="middle" '
        f'font-size="16" font-family="sans-serif">{title}</text>',
    ]


def _axes(xlo, xhi, ylo, yhi, xlabel, ylabel, log_y=False) -> list[str]:
    px0, px1 = MARGIN_L, VIEW_W - MARGIN_R
    py0, py1 = VIEW_H - MARGIN_B, MARGIN_T
    parts = [f'<rect x="{px0}" y="{py1}" width="{px1 - px0}" '
             f'height="{py0 - py1}" fill="none" stroke="black"/>']
    for tx in _axis_ticks(xlo, xhi):
        px = px0 + (tx - xlo) / (xhi - xlo or 1.0) * (px1 - px0)
        parts.append(f'<line x1="{_fmt(px)}" y1="{py0}" x2="{_fmt(px)}" '
                     f'y2="{py0 + 5}" stroke="black"/>')
        parts.append(f'<text x="{_fmt(px)}" y="{py0 + 20}" text-anchor="middle" '
                     f'font-size="11" font-family="sans-serif">{tx:.4g}</text>')
    for ty in _axis_ticks(ylo, yhi):
        py = py0 - (ty - ylo) / (yhi - ylo or 1.0) * (py0 - py1)
        label = f"{(10 ** ty):.3g}" if log_y else f"{ty:.4g}"
        parts.append(f'<line x1="{px0 - 5}" y1="{_fmt(py)}" x2="{px0}" '
                     f'y2="{_fmt(py)}" stroke="black"/>')
        parts.append(f'<text x="{px0 - 8}" y="{_fmt(py + 4)}" text-anchor="end" '
                     f'font-size="11" font-family="sans-serif">{label}</text>')
    parts.append(f'<text x="{(px0 + px1) / 2:.0f}" y="{VIEW_H - 15}" '
                 f'text-anchor="middle" font-size="13" font-family="sans-serif">'
                 f'{xlabel}</text>')
    parts.append(f'<text x="20" y="{(py0 + py1) / 2:.0f}" text-anchor="middle" '
                 f'font-size="13" font-family="sans-serif" '
                 f'transform="rotate(-90 20 {(py0 + py1) / 2:.0f})">{ylabel}</text>')
    return parts


LINE_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def line_plot(path, x, series, labels, xlabel: str, ylabel: str,
              title: str = "", log_y: bool = False) -> None:
    """Write a line plot; series is a list of y arrays sharing the x axis."""
    xs = _check_finite(x, "x")
    ys = [_check_finite(s, f"series {i}") for i, s in enumerate(series)]
    if log_y:
        ys = [np.log10(np.maximum(s, 1e-300)) for s in ys]
    ylo = min(float(np.min(s)) for s in ys)
    yhi = max(float(np.max(s)) for s in ys)
    if yhi == ylo:
        yhi = ylo + 1.0
    xlo, xhi = float(np.min(xs)), float(np.max(xs))
    px0, px1 = MARGIN_L, VIEW_W - MARGIN_R
    py0, py1 = VIEW_H - MARGIN_B, MARGIN_T

    parts = _header(title)
    parts += _axes(xlo, xhi, ylo, yhi, xlabel, ylabel, log_y=log_y)
    for i, s in enumerate(ys):
        pts = []
        for xv, yv in zip(xs, s):
            px = px0 + (xv - xlo) / (xhi - xlo or 1.0) * (px1 - px0)
            py = py0 - (yv - ylo) / (yhi - ylo) * (py0 - py1)
            pts.append(f"{_fmt(px)},{_fmt(py)}")
        color = LINE_COLORS[i % len(LINE_COLORS)]
        parts.append(f'<path d="M {" L ".join(pts)}" fill="none" '
                     f'stroke="{color}" stroke-width="1.5"/>')
        if labels and i < len(labels):
            ly = MARGIN_T + 16 * (i + 1)
            parts.append(f'<line x1="{px1 - 120}" y1="{ly - 4}" x2="{px1 - 95}" '
                         f'y2="{ly - 4}" stroke="{color}" stroke-width="1.5"/>')
            parts.append(f'<text x="{px1 - 90}" y="{ly}" font-size="11" '
                         f'font-family="sans-serif">{labels[i]}</text>')
    parts.append("</svg>")
    _write(path, parts)


def heatmap(path, matrix, extent, xlabel: str, ylabel: str, title: str = "",
            log_scale: bool = False) -> None:
    """Write a heatmap of matrix[i, j]; rows map to the y axis (row 0 at the
    bottom), columns to the x axis.  extent = (xlo, xhi, ylo, yhi)."""
    m = _check_finite(matrix, "matrix")
    if m.ndim != 2:
        raise DomainError("heatmap needs a 2D matrix")
    vals = np.log10(np.maximum(m, 1e-300)) if log_scale else m
    vlo, vhi = float(np.min(vals)), float(np.max(vals))
    span = (vhi - vlo) or 1.0
    xlo, xhi, ylo, yhi = extent
    px0, px1 = MARGIN_L, VIEW_W - MARGIN_R
    py0, py1 = VIEW_H - MARGIN_B, MARGIN_T

    parts = _header(title)
    rows, cols = m.shape
    cw = (px1 - px0) / cols
    ch = (py0 - py1) / rows
    for i in range(rows):
        y = py0 - (i + 1) * ch
        for j in range(cols):
            x = px0 + j * cw
            frac = (vals[i, j] - vlo) / span
            parts.append(f'<rect x="{_fmt(x)}" y="{_fmt(y)}" '
                         f'width="{_fmt(cw + 0.5)}" height="{_fmt(ch + 0.5)}" '
                         f'fill="{color_at(frac)}"/>')
    parts += _axes(xlo, xhi, ylo, yhi, xlabel, ylabel)
    scale_note = " (log10 color scale)" if log_scale else ""
    parts.append(f'<text x="{px0}" y="{MARGIN_T - 8}" font-size="11" '
                 f'font-family="sans-serif">range [{vlo:.4g}, {vhi:.4g}]'
                 f'{scale_note}</text>')
    parts.append("</svg>")
    _write(path, parts)


def _write(path, parts: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(parts))
        fh.write("\n")
