"""Serialisation of sweep grids: CSV, JSON and SVG heatmaps."""

import csv
import io
import json
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .errors import ComEntangleError
from .sweep import Axis, SweepGrid

CSV_HEADER = ("x", "y", "value")


class MalformedGrid(ComEntangleError, ValueError):
    pass


def _fmt(v: float) -> str:
    return format(v, ".17g")


def grid_to_csv(grid: SweepGrid) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for x, y, v in grid.points():
        writer.writerow((_fmt(x), _fmt(y), _fmt(v)))
    return buf.getvalue()


def grid_from_csv(text: str, x_name: str = "x", y_name: str = "y") -> SweepGrid:
    """Rebuild a grid from ``x,y,value`` rows written in row-major order."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(c.strip() for c in rows[0]) != CSV_HEADER:
        raise MalformedGrid("CSV must start with the header 'x,y,value'")
    try:
        data = np.array([[float(c) for c in r] for r in rows[1:] if r], dtype=float)
    except ValueError as exc:
        raise MalformedGrid(f"non-numeric CSV entry: {exc}") from None
    if data.size == 0:
        raise MalformedGrid("CSV has no data rows")
    if data.ndim != 2 or data.shape[1] != 3:
        raise MalformedGrid("every CSV row needs exactly three fields")
    ys = data[:, 1]
    nx = int(np.argmax(ys != ys[0])) if np.any(ys != ys[0]) else len(ys)
    if len(data) % nx:
        raise MalformedGrid(f"{len(data)} rows do not form rows of length {nx}")
    ny = len(data) // nx
    block = data.reshape(ny, nx, 3)
    if not (np.all(block[:, :, 0] == block[0, :, 0]) and np.all(block[:, :, 1] == block[:, :1, 1])):
        raise MalformedGrid("CSV rows are not a row-major rectangular grid")
    xs = block[0, :, 0]
    yvals = block[:, 0, 1]
    try:
        return SweepGrid(
            Axis(x_name, float(xs.min()), float(xs.max()), nx),
            Axis(y_name, float(yvals.min()), float(yvals.max()), ny),
            block[:, :, 2],
        )
    except ComEntangleError as exc:
        raise MalformedGrid(str(exc)) from None


def grid_to_json(grid: SweepGrid) -> str:
    return json.dumps(grid.to_dict(), indent=1)


def grid_from_json(text: str) -> SweepGrid:
    try:
        return SweepGrid.from_dict(json.loads(text))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise MalformedGrid(f"invalid grid JSON: {exc}") from None
    except ComEntangleError as exc:
        raise MalformedGrid(str(exc)) from None


def grid_format(path, fmt=None) -> str:
    if fmt:
        return fmt
    return "json" if Path(path).suffix.lower() == ".json" else "csv"


def write_grid(grid: SweepGrid, path, fmt=None) -> None:
    text = grid_to_json(grid) if grid_format(path, fmt) == "json" else grid_to_csv(grid)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_grid(path, fmt=None) -> SweepGrid:
    text = Path(path).read_text(encoding="utf-8")
    if grid_format(path, fmt) == "json":
        return grid_from_json(text)
    return grid_from_csv(text)


# -- SVG ---------------------------------------------------------------------

# viridis anchors
_CMAP = np.array(
    [
        [68, 1, 84],
        [59, 82, 139],
        [33, 145, 140],
        [94, 201, 98],
        [253, 231, 37],
    ],
    dtype=float,
)


def color(frac: float) -> str:
    frac = min(max(frac, 0.0), 1.0)
    pos = frac * (len(_CMAP) - 1)
    i = min(int(pos), len(_CMAP) - 2)
    rgb = _CMAP[i] + (pos - i) * (_CMAP[i + 1] - _CMAP[i])
    return "#{:02x}{:02x}{:02x}".format(*(int(round(c)) for c in rgb))


def _num(v: float) -> str:
    return f"{v:.4g}"


def render_heatmap(grid: SweepGrid, title=None, x_label=None, y_label=None, cell=4) -> str:
    """Standalone SVG 1.1 heatmap with a colour-bar legend.

    The colour scale is linear from the grid minimum to its maximum; a
    uniform grid renders as a single colour.  Row 0 (smallest ``y``) is drawn
    at the bottom.
    """
    vals = grid.values
    ny, nx = vals.shape
    vmin = float(vals.min())
    vmax = float(vals.max())
    span = vmax - vmin
    x_label = x_label or grid.x_axis.name
    y_label = y_label or grid.y_axis.name

    cw = max(cell, 400.0 / nx)
    ch = max(cell, 400.0 / ny)
    left, top = 70.0, 40.0
    plot_w, plot_h = cw * nx, ch * ny
    bar_x = left + plot_w + 30.0
    width = bar_x + 90.0
    height = top + plot_h + 60.0

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{left:.1f}" y="22" font-size="14" font-family="sans-serif">{escape(title)}</text>')
    out.append('<g id="cells" shape-rendering="crispEdges">')
    for j in range(ny):
        y = top + (ny - 1 - j) * ch
        for i in range(nx):
            frac = 0.0 if span == 0 else (vals[j, i] - vmin) / span
            out.append(
                f'<rect x="{left + i * cw:.2f}" y="{y:.2f}" width="{cw:.2f}" height="{ch:.2f}" '
                f'fill="{color(frac)}" data-value="{_fmt(float(vals[j, i]))}"/>'
            )
    out.append("</g>")

    out.append(
        f'<rect x="{left:.1f}" y="{top:.1f}" width="{plot_w:.2f}" height="{plot_h:.2f}" fill="none" stroke="black"/>'
    )
    xa, ya = grid.x_axis, grid.y_axis
    base = top + plot_h
    out += [
        f'<text x="{left:.1f}" y="{base + 16:.1f}" font-size="11" font-family="sans-serif">{_num(xa.min)}</text>',
        f'<text x="{left + plot_w:.1f}" y="{base + 16:.1f}" font-size="11" font-family="sans-serif" '
        f'text-anchor="end">{_num(xa.max)}</text>',
        f'<text id="x-label" x="{left + plot_w / 2:.1f}" y="{base + 40:.1f}" font-size="13" '
        f'font-family="sans-serif" text-anchor="middle">{escape(x_label)}</text>',
        f'<text x="{left - 6:.1f}" y="{base:.1f}" font-size="11" font-family="sans-serif" '
        f'text-anchor="end">{_num(ya.min)}</text>',
        f'<text x="{left - 6:.1f}" y="{top + 10:.1f}" font-size="11" font-family="sans-serif" '
        f'text-anchor="end">{_num(ya.max)}</text>',
        f'<text id="y-label" x="{left - 40:.1f}" y="{top + plot_h / 2:.1f}" font-size="13" font-family="sans-serif" '
        f'text-anchor="middle" transform="rotate(-90 {left - 40:.1f} {top + plot_h / 2:.1f})">{escape(y_label)}</text>',
    ]

    out.append('<defs><linearGradient id="cbar" x1="0" y1="1" x2="0" y2="0">')
    for k in range(len(_CMAP)):
        f = k / (len(_CMAP) - 1)
        out.append(f'<stop offset="{f:.2f}" stop-color="{color(f)}"/>')
    out.append("</linearGradient></defs>")
    bar_fill = color(0.0) if span == 0 else "url(#cbar)"
    out += [
        f'<rect id="colorbar" x="{bar_x:.1f}" y="{top:.1f}" width="18" height="{plot_h:.2f}" '
        f'fill="{bar_fill}" stroke="black"/>',
        f'<text id="legend-max" x="{bar_x + 24:.1f}" y="{top + 10:.1f}" font-size="11" '
        f'font-family="sans-serif">{_num(vmax)}</text>',
        f'<text id="legend-min" x="{bar_x + 24:.1f}" y="{base:.1f}" font-size="11" '
        f'font-family="sans-serif">{_num(vmin)}</text>',
        "</svg>",
    ]
    return "\n".join(out) + "\n"


def write_heatmap(grid: SweepGrid, path, **kw) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_heatmap(grid, **kw))
