"""Minimal static SVG rendering for the command-line reports.

Hand-rolled on purpose: the plots are diagnostics, so polylines,
rectangles, and text cover everything, and skipping a plotting dependency
keeps the outputs byte-reproducible. All numbers are formatted through one
fixed-precision helper; no timestamps, ids, or other run-varying content
are ever emitted.
"""
from __future__ import annotations

import math
from html import escape

import numpy as np

WIDTH = 640
HEIGHT = 440
MARGIN_LEFT = 64
MARGIN_RIGHT = 24
MARGIN_TOP = 34
MARGIN_BOTTOM = 48

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2",
)


def _fmt(value: float) -> str:
    out = format(float(value), ".4f")
    return "0.0000" if out in ("-0.0000",) else out


def _fmt_tick(value: float) -> str:
    out = format(float(value), ".4g")
    return "0" if out == "-0" else out


def _ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    if not hi > lo:
        return [lo]
    raw_step = (hi - lo) / max(target, 1)
    power = 10.0 ** math.floor(math.log10(raw_step))
    for mult in (1.0, 2.0, 5.0, 10.0):
        step = mult * power
        if raw_step <= step:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


def _pad_range(lo: float, hi: float) -> tuple[float, float]:
    if hi > lo:
        pad = 0.05 * (hi - lo)
        return lo - pad, hi + pad
    pad = max(0.5, abs(lo) * 0.1)
    return lo - pad, hi + pad


class _Frame:
    """Plot area with data-to-pixel transforms and shared axis furniture."""

    def __init__(self, xlo, xhi, ylo, yhi):
        self.xlo, self.xhi = float(xlo), float(xhi)
        self.ylo, self.yhi = float(ylo), float(yhi)
        self.px_left = MARGIN_LEFT
        self.px_right = WIDTH - MARGIN_RIGHT
        self.px_top = MARGIN_TOP
        self.px_bottom = HEIGHT - MARGIN_BOTTOM
        self.parts: list[str] = []

    def x(self, v: float) -> float:
        span = self.xhi - self.xlo
        frac = 0.5 if span == 0 else (float(v) - self.xlo) / span
        return self.px_left + frac * (self.px_right - self.px_left)

    def y(self, v: float) -> float:
        span = self.yhi - self.ylo
        frac = 0.5 if span == 0 else (float(v) - self.ylo) / span
        return self.px_bottom - frac * (self.px_bottom - self.px_top)

    def add(self, element: str) -> None:
        self.parts.append(element)

    def axes(self, title: str, xlabel: str, ylabel: str) -> None:
        self.add(
            f'<rect x="{self.px_left}" y="{self.px_top}" '
            f'width="{self.px_right - self.px_left}" '
            f'height="{self.px_bottom - self.px_top}" '
            'fill="white" stroke="#333333" stroke-width="1"/>'
        )
        for t in _ticks(self.xlo, self.xhi):
            px = _fmt(self.x(t))
            self.add(
                f'<line x1="{px}" y1="{self.px_bottom}" x2="{px}" '
                f'y2="{self.px_bottom + 4}" stroke="#333333"/>'
            )
            self.add(
                f'<text x="{px}" y="{self.px_bottom + 16}" font-size="10" '
                f'text-anchor="middle" fill="#333333">{_fmt_tick(t)}</text>'
            )
        for t in _ticks(self.ylo, self.yhi):
            py = _fmt(self.y(t))
            self.add(
                f'<line x1="{self.px_left - 4}" y1="{py}" '
                f'x2="{self.px_left}" y2="{py}" stroke="#333333"/>'
            )
            self.add(
                f'<text x="{self.px_left - 7}" y="{py}" font-size="10" '
                f'text-anchor="end" dominant-baseline="middle" '
                f'fill="#333333">{_fmt_tick(t)}</text>'
            )
        cx = (self.px_left + self.px_right) // 2
        cy = (self.px_top + self.px_bottom) // 2
        self.add(
            f'<text x="{cx}" y="{MARGIN_TOP - 12}" font-size="13" '
            f'text-anchor="middle" fill="#111111">{escape(title)}</text>'
        )
        self.add(
            f'<text x="{cx}" y="{HEIGHT - 10}" font-size="11" '
            f'text-anchor="middle" fill="#333333">{escape(xlabel)}</text>'
        )
        self.add(
            f'<text x="14" y="{cy}" font-size="11" text-anchor="middle" '
            f'transform="rotate(-90 14 {cy})" '
            f'fill="#333333">{escape(ylabel)}</text>'
        )

    def polyline(self, xs, ys, color: str, width: float = 1.5) -> None:
        pts = " ".join(
            f"{_fmt(self.x(a))},{_fmt(self.y(b))}" for a, b in zip(xs, ys)
        )
        self.add(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="{width}"/>'
        )

    def legend(self, entries) -> None:
        x0 = self.px_right - 150
        y = self.px_top + 14
        for label, color in entries:
            self.add(
                f'<line x1="{x0}" y1="{y - 3}" x2="{x0 + 18}" y2="{y - 3}" '
                f'stroke="{color}" stroke-width="2"/>'
            )
            self.add(
                f'<text x="{x0 + 24}" y="{y}" font-size="10" '
                f'fill="#333333">{escape(str(label))}</text>'
            )
            y += 14

    def render(self) -> str:
        body = "\n".join(self.parts)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
            f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">\n'
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>\n'
            f"{body}\n</svg>\n"
        )


def line_plot(series, title: str, xlabel: str, ylabel: str) -> str:
    """Overlaid line series: [(label, xs, ys), ...]."""
    series = [(str(label), np.asarray(xs, float), np.asarray(ys, float))
              for label, xs, ys in series]
    if not series:
        raise ValueError("need at least one series")
    xlo = min(s[1].min() for s in series)
    xhi = max(s[1].max() for s in series)
    ylo = min(s[2].min() for s in series)
    yhi = max(s[2].max() for s in series)
    frame = _Frame(*_pad_range(xlo, xhi), *_pad_range(ylo, yhi))
    frame.axes(title, xlabel, ylabel)
    entries = []
    for idx, (label, xs, ys) in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        frame.polyline(xs, ys, color)
        entries.append((label, color))
    if len(entries) > 1 or entries[0][0]:
        frame.legend(entries)
    return frame.render()


def histogram_plot(layers, title: str, xlabel: str,
                   ylabel: str = "mass") -> str:
    """Histogram overlay: [(label, bin_edges, masses, style), ...].

    style "bar" draws filled translucent columns, "line" draws a step
    outline; baselines read best as lines over observed bars.
    """
    prepared = []
    for label, edges, masses, style in layers:
        edges = np.asarray(edges, float)
        masses = np.asarray(masses, float)
        if style not in ("bar", "line"):
            raise ValueError(f"style must be bar or line, got {style!r}")
        prepared.append((str(label), edges, masses, style))
    if not prepared:
        raise ValueError("need at least one histogram")
    xlo = min(p[1][0] for p in prepared)
    xhi = max(p[1][-1] for p in prepared)
    yhi = max(p[2].max() for p in prepared)
    frame = _Frame(xlo, xhi, *_pad_range(0.0, float(yhi)))
    frame.axes(title, xlabel, ylabel)
    entries = []
    for idx, (label, edges, masses, style) in enumerate(prepared):
        color = PALETTE[idx % len(PALETTE)]
        if style == "bar":
            for b, mass in enumerate(masses):
                x0 = frame.x(edges[b])
                x1 = frame.x(edges[b + 1])
                y0 = frame.y(mass)
                frame.add(
                    f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" '
                    f'width="{_fmt(max(x1 - x0, 0.0))}" '
                    f'height="{_fmt(max(frame.y(0.0) - y0, 0.0))}" '
                    f'fill="{color}" fill-opacity="0.45" stroke="none"/>'
                )
        else:
            xs, ys = [], []
            for b, mass in enumerate(masses):
                xs += [edges[b], edges[b + 1]]
                ys += [mass, mass]
            frame.polyline(xs, ys, color)
        entries.append((label, color))
    frame.legend(entries)
    return frame.render()


def _heat_color(frac: float) -> str:
    """Three-stop gradient dark blue -> teal -> yellow."""
    stops = ((13, 8, 135), (33, 145, 140), (253, 231, 37))
    frac = min(max(frac, 0.0), 1.0)
    if frac <= 0.5:
        a, b, t = stops[0], stops[1], frac * 2.0
    else:
        a, b, t = stops[1], stops[2], (frac - 0.5) * 2.0
    rgb = tuple(round(a[c] + (b[c] - a[c]) * t) for c in range(3))
    return f"#{rgb[0]:02x}{rgb[1]:02x}{rgb[2]:02x}"


def heatmap(x_values, y_values, grid, title: str, xlabel: str,
            ylabel: str) -> str:
    """Color map of grid[i, j] at x = x_values[i], y = y_values[j]."""
    xs = np.asarray(x_values, float)
    ys = np.asarray(y_values, float)
    values = np.asarray(grid, float)
    if values.shape != (xs.size, ys.size):
        raise ValueError(
            f"grid shape {values.shape} does not match axes "
            f"({xs.size}, {ys.size})"
        )
    frame = _Frame(xs[0], xs[-1], ys[0], ys[-1])
    lo, hi = float(values.min()), float(values.max())
    span = hi - lo if hi > lo else 1.0
    half_x = 0.5 * (xs[1] - xs[0]) if xs.size > 1 else 0.5
    half_y = 0.5 * (ys[1] - ys[0]) if ys.size > 1 else 0.5
    for i in range(xs.size):
        for j in range(ys.size):
            x0 = frame.x(max(xs[i] - half_x, frame.xlo))
            x1 = frame.x(min(xs[i] + half_x, frame.xhi))
            y1 = frame.y(max(ys[j] - half_y, frame.ylo))
            y0 = frame.y(min(ys[j] + half_y, frame.yhi))
            color = _heat_color((values[i, j] - lo) / span)
            frame.add(
                f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" '
                f'width="{_fmt(x1 - x0)}" height="{_fmt(y1 - y0)}" '
                f'fill="{color}" stroke="none"/>'
            )
    frame.axes(title, xlabel, ylabel)
    frame.add(
        f'<text x="{frame.px_right}" y="{MARGIN_TOP - 12}" font-size="10" '
        f'text-anchor="end" fill="#333333">'
        f"range [{_fmt_tick(lo)}, {_fmt_tick(hi)}]</text>"
    )
    return frame.render()


def path_plot(coords, restarts, title: str, xlabel: str = "axis 0",
              ylabel: str = "axis 1") -> str:
    """Per-restart polylines through embedded trajectory points."""
    pts = np.asarray(coords, float)
    groups = np.asarray(restarts)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("coords must be (P, 2)")
    if groups.shape[0] != pts.shape[0]:
        raise ValueError("one restart id per point required")
    frame = _Frame(*_pad_range(pts[:, 0].min(), pts[:, 0].max()),
                   *_pad_range(pts[:, 1].min(), pts[:, 1].max()))
    frame.axes(title, xlabel, ylabel)
    entries = []
    for idx, rid in enumerate(sorted(set(int(g) for g in groups))):
        sel = groups == rid
        color = PALETTE[idx % len(PALETTE)]
        frame.polyline(pts[sel, 0], pts[sel, 1], color)
        start = pts[sel][0]
        end = pts[sel][-1]
        frame.add(
            f'<circle cx="{_fmt(frame.x(start[0]))}" '
            f'cy="{_fmt(frame.y(start[1]))}" r="3" fill="none" '
            f'stroke="{color}"/>'
        )
        frame.add(
            f'<circle cx="{_fmt(frame.x(end[0]))}" '
            f'cy="{_fmt(frame.y(end[1]))}" r="3" fill="{color}"/>'
        )
        entries.append((f"restart {rid}", color))
    frame.legend(entries)
    return frame.render()
