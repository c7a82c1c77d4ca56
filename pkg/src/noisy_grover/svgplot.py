"""Minimal scatter-plot writer producing standalone SVG.

No plotting library is involved: points become ``<circle>`` elements, the
binned means a ``<polyline>`` and the regression a ``<line>``. The canvas is
fixed and the document references no external resources.
"""
from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

WIDTH = 640
HEIGHT = 480
MARGIN_LEFT = 70
MARGIN_RIGHT = 20
MARGIN_TOP = 30
MARGIN_BOTTOM = 60


class _Frame:
    def __init__(self, x_range: tuple[float, float], y_range: tuple[float, float]):
        self.x0, self.x1 = x_range
        self.y0, self.y1 = y_range
        self.pw = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
        self.ph = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(self, x: float) -> float:
        return MARGIN_LEFT + (x - self.x0) / (self.x1 - self.x0) * self.pw

    def py(self, y: float) -> float:
        return MARGIN_TOP + (1.0 - (y - self.y0) / (self.y1 - self.y0)) * self.ph


def scatter_svg(
    xs: Sequence[float],
    ys: Sequence[float],
    *,
    x_range: tuple[float, float] = (0.0, 1.0),
    y_range: tuple[float, float] = (0.0, 1.0),
    line: Sequence[tuple[float, float]] = (),
    fit: tuple[float, float] | None = None,
    x_label: str = "",
    y_label: str = "",
    title: str = "",
) -> str:
    """Render a scatter plot.

    ``line`` is drawn as a polyline (binned means), ``fit`` as
    ``(slope, intercept)`` clipped to the x range.
    """
    f = _Frame(x_range, y_range)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{f.pw}" height="{f.ph}" '
        'fill="none" stroke="black" stroke-width="1"/>',
    ]
    for i in range(6):
        tx = x_range[0] + (x_range[1] - x_range[0]) * i / 5
        ty = y_range[0] + (y_range[1] - y_range[0]) * i / 5
        out.append(f'<text x="{f.px(tx):.2f}" y="{HEIGHT - MARGIN_BOTTOM + 16}" font-size="11" '
                   f'text-anchor="middle">{tx:.3g}</text>')
        out.append(f'<text x="{MARGIN_LEFT - 6}" y="{f.py(ty) + 4:.2f}" font-size="11" '
                   f'text-anchor="end">{ty:.3g}</text>')

    out.append('<g fill="steelblue" fill-opacity="0.35">')
    for x, y in zip(xs, ys):
        out.append(f'<circle cx="{f.px(x):.2f}" cy="{f.py(y):.2f}" r="1.5"/>')
    out.append('</g>')

    if line:
        pts = " ".join(f"{f.px(x):.2f},{f.py(y):.2f}" for x, y in line)
        out.append(f'<polyline points="{pts}" fill="none" stroke="darkorange" stroke-width="2"/>')
    if fit is not None:
        slope, intercept = fit
        xa, xb = x_range
        out.append(f'<line x1="{f.px(xa):.2f}" y1="{f.py(intercept + slope * xa):.2f}" '
                   f'x2="{f.px(xb):.2f}" y2="{f.py(intercept + slope * xb):.2f}" '
                   'stroke="crimson" stroke-width="1.5" stroke-dasharray="6,4"/>')

    cx = MARGIN_LEFT + f.pw / 2
    cy = MARGIN_TOP + f.ph / 2
    out.append(f'<text x="{cx:.2f}" y="{HEIGHT - 18}" font-size="13" text-anchor="middle">'
               f'{escape(x_label)}</text>')
    out.append(f'<text x="18" y="{cy:.2f}" font-size="13" text-anchor="middle" '
               f'transform="rotate(-90 18 {cy:.2f})">{escape(y_label)}</text>')
    if title:
        out.append(f'<text x="{cx:.2f}" y="20" font-size="14" text-anchor="middle">{escape(title)}</text>')
    out.append('</svg>')
    return "\n".join(out) + "\n"
