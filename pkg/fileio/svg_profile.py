"""
Static SVG charts of temperature profiles and space-time histories.

Documents are assembled as text with fixed-precision coordinates, so identical
inputs always produce byte-identical output.
"""
import math
from typing import List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from models.schemas import Grid1D, TemperatureField
from utils.errors import ConfigurationError

COLOR_CYCLE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
)
TICK_COUNT = 5

# Blue -> white -> red ramp for the heat map
_RAMP = (
    (0.00, (59, 76, 192)),
    (0.25, (141, 176, 254)),
    (0.50, (221, 221, 221)),
    (0.75, (244, 154, 123)),
    (1.00, (180, 4, 38)),
)


class SvgDocument:
    """Accumulates SVG elements into a standalone document."""

    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self.parts: List[str] = []

    def line(self, x1: float, y1: float, x2: float, y2: float, stroke: str = "#000000") -> None:
        self.parts.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="{stroke}" stroke-width="1"/>'
        )

    def rect(self, x: float, y: float, width: float, height: float, fill: str) -> None:
        self.parts.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{width:.2f}" height="{height:.2f}" '
            f'fill="{fill}"/>'
        )

    def text(self, x: float, y: float, content: str, anchor: str = "start", size: int = 12) -> None:
        self.parts.append(
            f'<text x="{x:.2f}" y="{y:.2f}" font-family="sans-serif" font-size="{size}" '
            f'text-anchor="{anchor}">{escape(content)}</text>'
        )

    def polyline(self, points: Sequence[Tuple[float, float]], stroke: str) -> None:
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
        self.parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="1.5"/>'
        )

    def open_group(self, css_class: str, title: Optional[str] = None) -> None:
        self.parts.append(f"<g class={quoteattr(css_class)}>")
        if title is not None:
            self.parts.append(f"<title>{escape(title)}</title>")

    def close_group(self) -> None:
        self.parts.append("</g>")

    def render(self) -> str:
        header = (
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}">'
        )
        body = "\n".join(self.parts)
        return f"{header}\n{body}\n</svg>\n"


class _Axes:
    """Maps data coordinates onto the plot rectangle."""

    def __init__(
        self,
        left: float,
        top: float,
        width: float,
        height: float,
        x_range: Tuple[float, float],
        y_range: Tuple[float, float],
    ):
        self.left, self.top, self.width, self.height = left, top, width, height
        self.x_range, self.y_range = x_range, y_range

    def x(self, value: float) -> float:
        lo, hi = self.x_range
        return self.left + (value - lo) / (hi - lo) * self.width

    def y(self, value: float) -> float:
        lo, hi = self.y_range
        return self.top + self.height - (value - lo) / (hi - lo) * self.height

    def draw_frame(self, svg: SvgDocument, x_label: str, y_label: str) -> None:
        bottom = self.top + self.height
        svg.line(self.left, bottom, self.left + self.width, bottom)
        svg.line(self.left, self.top, self.left, bottom)
        for value in np.linspace(*self.x_range, TICK_COUNT):
            px = self.x(value)
            svg.line(px, bottom, px, bottom + 5)
            svg.text(px, bottom + 18, f"{value:.4g}", anchor="middle")
        for value in np.linspace(*self.y_range, TICK_COUNT):
            py = self.y(value)
            svg.line(self.left - 5, py, self.left, py)
            svg.text(self.left - 8, py + 4, f"{value:.4g}", anchor="end")
        svg.text(self.left + self.width / 2, bottom + 40, x_label, anchor="middle")
        svg.text(14, self.top + self.height / 2, y_label, anchor="middle")


def value_range(fields: Sequence[TemperatureField]) -> Tuple[float, float]:
    """
    Autoscaled y-range: data range padded by 5% on both sides.

    A zero-width range around v becomes [v-1, v+1]; with no finite data the
    range is [-1, 1].
    """
    finite = [f.values[np.isfinite(f.values)] for f in fields]
    data = np.concatenate(finite) if finite else np.empty(0)
    if data.size == 0:
        return -1.0, 1.0
    lo, hi = float(data.min()), float(data.max())
    if hi == lo:
        return lo - 1.0, hi + 1.0
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def render_svg_profile(
    fields: Sequence[TemperatureField],
    labels: Sequence[str],
    grid: Grid1D,
    title: str = "Temperature profile",
) -> str:
    """
    Plot temperature against position, one polyline per field.

    Args:
        fields: Fields to draw, all on ``grid``
        labels: Legend text, one per field
        grid: Grid supplying the node positions
        title: Chart title

    Returns:
        Standalone SVG document

    Raises:
        ConfigurationError: If there are no fields or the label count differs
    """
    if not fields:
        raise ConfigurationError("Nothing to plot: no fields given")
    if len(fields) != len(labels):
        raise ConfigurationError(f"{len(fields)} fields but {len(labels)} labels")

    svg = SvgDocument(800, 480)
    axes = _Axes(70, 40, 540, 360, (0.0, grid.length), value_range(fields))
    svg.text(axes.left + axes.width / 2, 24, title, anchor="middle", size=14)
    axes.draw_frame(svg, "position x", "T")

    positions = grid.positions
    for index, (field, label) in enumerate(zip(fields, labels)):
        color = COLOR_CYCLE[index % len(COLOR_CYCLE)]
        points = [
            (axes.x(x), axes.y(value))
            for x, value in zip(positions, field.values)
            if math.isfinite(value)
        ]
        svg.polyline(points, color)

        row_y = axes.top + 10 + 18 * index
        svg.open_group("legend-entry")
        svg.rect(axes.left + axes.width + 20, row_y - 9, 12, 12, color)
        svg.text(axes.left + axes.width + 38, row_y + 1, label)
        svg.close_group()
    return svg.render()


def _ramp_color(fraction: float) -> str:
    fraction = min(max(fraction, 0.0), 1.0)
    for (f0, c0), (f1, c1) in zip(_RAMP, _RAMP[1:]):
        if fraction <= f1:
            w = (fraction - f0) / (f1 - f0)
            r, g, b = (round(a + (b_ - a) * w) for a, b_ in zip(c0, c1))
            return f"#{r:02x}{g:02x}{b:02x}"
    return "#{:02x}{:02x}{:02x}".format(*_RAMP[-1][1])


def _thin(count: int, limit: int) -> np.ndarray:
    """At most ``limit`` evenly spread indices into range(count), ends included."""
    return np.unique(np.linspace(0, count - 1, min(count, limit)).round().astype(int))


def render_svg_heatmap(
    frames: Sequence[TemperatureField],
    grid: Grid1D,
    max_cells: int = 100,
    title: str = "Temperature history",
) -> str:
    """
    Colour map of the stored history: position across, time downwards.

    Rows and columns are thinned to at most ``max_cells`` each.

    Raises:
        ConfigurationError: If there are no frames
    """
    if not frames:
        raise ConfigurationError("Nothing to plot: no frames given")

    rows = _thin(len(frames), max_cells)
    cols = _thin(grid.node_count, max_cells)
    lo, hi = value_range([frames[i] for i in rows])

    svg = SvgDocument(800, 480)
    left, top, width, height = 90.0, 40.0, 540.0, 360.0
    svg.text(left + width / 2, 24, title, anchor="middle", size=14)
    cell_w, cell_h = width / len(cols), height / len(rows)
    svg.open_group("cells")
    for r, frame_index in enumerate(rows):
        values = frames[frame_index].values
        for c, node in enumerate(cols):
            value = values[node]
            color = _ramp_color((value - lo) / (hi - lo)) if math.isfinite(value) else "#000000"
            svg.rect(left + c * cell_w, top + r * cell_h, cell_w, cell_h, color)
    svg.close_group()

    bottom = top + height
    svg.line(left, bottom, left + width, bottom)
    svg.line(left, top, left, bottom)
    for value in np.linspace(0.0, grid.length, TICK_COUNT):
        px = left + value / grid.length * width
        svg.text(px, bottom + 18, f"{value:.4g}", anchor="middle")
    for r in np.unique(np.linspace(0, len(rows) - 1, TICK_COUNT).round().astype(int)):
        t = frames[rows[r]].time
        svg.text(left - 8, top + (r + 0.5) * cell_h + 4, f"t={t:.4g}", anchor="end")
    svg.text(left + width / 2, bottom + 40, "position x", anchor="middle")

    # Colour bar
    bar_left = left + width + 40
    steps = 50
    for k in range(steps):
        fraction = 1.0 - k / (steps - 1)
        band = height / steps
        svg.rect(bar_left, top + k * band, 20, band + 0.5, _ramp_color(fraction))
    svg.text(bar_left + 26, top + 10, f"{hi:.4g}")
    svg.text(bar_left + 26, bottom, f"{lo:.4g}")
    return svg.render()
