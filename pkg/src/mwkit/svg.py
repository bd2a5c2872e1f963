"""Static SVG 1.1 rendering of phase portraits and basin grids.

Drawings use a fixed 1000 x 1000 viewBox; the requested window is mapped
into it with equal aspect ratio (the shorter side is padded).
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

SIZE = 1000.0
MARGIN = 40.0

CLASS_COLORS = {
    "Excluded": "#ffffff",
    "ReachedF": "#d95f02",
    "ConvergedToP": "#1b9e77",
    "LeftWindow": "#7570b3",
    "MaxTimeExceeded": "#666666",
}


class Canvas:
    def __init__(self, window: Sequence[float]):
        xmin, xmax, ymin, ymax = window
        span = max(xmax - xmin, ymax - ymin)
        cx, cy = 0.5 * (xmin + xmax), 0.5 * (ymin + ymax)
        self.x0, self.y0 = cx - 0.5 * span, cy - 0.5 * span
        self.k = (SIZE - 2 * MARGIN) / span
        self.parts: list[str] = []

    def px(self, x, y):
        return MARGIN + (x - self.x0) * self.k, SIZE - MARGIN - (y - self.y0) * self.k

    def add(self, s: str) -> None:
        self.parts.append(s)

    def circle(self, x: float, y: float, radius: float, *, cls: str, stroke: str, fill: str = "none", width: float = 2) -> None:
        u, v = self.px(x, y)
        self.add(
            f'<circle class="{cls}" cx="{u:.3f}" cy="{v:.3f}" r="{radius * self.k:.3f}" '
            f'fill="{fill}" stroke="{stroke}" stroke-width="{width:g}"/>'
        )

    def marker(self, x: float, y: float, *, cls: str, color: str, label: str) -> None:
        u, v = self.px(x, y)
        self.add(f'<circle class="{cls}" cx="{u:.3f}" cy="{v:.3f}" r="7" fill="{color}" stroke="black"/>')
        self.add(f'<text x="{u + 10:.3f}" y="{v - 10:.3f}" font-size="22" font-family="sans-serif">{escape(label)}</text>')

    def polyline(self, pts: np.ndarray, *, cls: str, color: str, width: float = 2, dash: Optional[str] = None) -> None:
        if len(pts) < 2:
            return
        u, v = self.px(pts[:, 0], pts[:, 1])
        coords = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(u, v))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.add(f'<polyline class="{cls}" points="{coords}" fill="none" stroke="{color}" stroke-width="{width:g}"{extra}/>')

    def render(self, title: str, comments: Iterable[str] = ()) -> str:
        head = [
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
            '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">',
        ]
        head += [f"<!-- {c.replace('--', '- -')} -->" for c in comments]
        head.append(
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE:g}" height="{SIZE:g}" '
            f'viewBox="0 0 {SIZE:g} {SIZE:g}">'
        )
        head.append(f"<title>{escape(title)}</title>")
        head.append(f'<rect x="0" y="0" width="{SIZE:g}" height="{SIZE:g}" fill="white"/>')
        return "\n".join(head + self.parts + ["</svg>"]) + "\n"


def _legend(canvas: Canvas, entries: list[tuple[str, str]]) -> None:
    canvas.add('<g class="legend">')
    for i, (label, color) in enumerate(entries):
        y = MARGIN + 10 + 28 * i
        canvas.add(f'<rect x="{SIZE - 300:g}" y="{y - 14:g}" width="18" height="18" fill="{color}" stroke="black"/>')
        canvas.add(f'<text x="{SIZE - 272:g}" y="{y:g}" font-size="20" font-family="sans-serif">{escape(label)}</text>')
    canvas.add("</g>")


def portrait_svg(
    *,
    window: Sequence[float],
    R: float,
    p_point: Optional[tuple[float, float]],
    separatrices: Sequence[tuple[str, np.ndarray]],
    orbits: Sequence[np.ndarray],
    comments: Iterable[str] = (),
) -> str:
    """Borders of G and C, the focus F, P and the separatrices, in original units."""
    c = Canvas(window)
    for pts in orbits:
        c.polyline(pts, cls="orbit", color="#9e9e9e", width=1)
    c.circle(0.0, 0.0, R, cls="border-G", stroke="#1f4e9e")
    c.circle(R / 2, 0.0, R / 2, cls="border-C", stroke="#b03a2e", width=2)
    colors = {"StableOfF": "#6a1b9a", "UnstableOfF": "#2e7d32"}
    for which, pts in separatrices:
        c.polyline(pts, cls=f"separatrix {which}", color=colors.get(which, "black"), width=3)
    c.marker(R, 0.0, cls="focus", color="#ffcc00", label="F")
    if p_point is not None:
        c.marker(p_point[0], p_point[1], cls="equilibrium-P", color="#2e7d32", label="P")
    entries = [("Border of G", "#1f4e9e"), ("Border of C", "#b03a2e"), ("Focus (R,0)", "#ffcc00")]
    if p_point is not None:
        entries.append(("P", "#2e7d32"))
    for which, _ in separatrices:
        entries.append(("Separatrix W^s(F)" if which == "StableOfF" else "Separatrix W^u(F)", colors.get(which, "black")))
    if orbits:
        entries.append(("Orbits", "#9e9e9e"))
    _legend(c, entries)
    if p_point is not None:
        title = "Borders of G and C, Equilibrium Point P and Separatrix Directions at Focus F"
    else:
        title = "Borders of G and C and Focus F"
    return c.render(title, comments)


def basin_svg(*, window: Sequence[float], resolution: tuple[int, int], labels: np.ndarray, R: float, comments: Iterable[str] = ()) -> str:
    c = Canvas(window)
    xmin, xmax, ymin, ymax = window
    nx, ny = resolution
    dx, dy = (xmax - xmin) / nx, (ymax - ymin) / ny
    w, h = dx * c.k, dy * c.k
    c.add('<g class="basin" shape-rendering="crispEdges">')
    for i in range(ny):
        for j in range(nx):
            u, v = c.px(xmin + j * dx, ymin + (i + 1) * dy)
            name = str(labels[i, j])
            c.add(f'<rect x="{u:.3f}" y="{v:.3f}" width="{w:.3f}" height="{h:.3f}" fill="{CLASS_COLORS.get(name, "black")}"/>')
    c.add("</g>")
    c.circle(0.0, 0.0, R, cls="border-G", stroke="black", width=1.5)
    c.circle(R / 2, 0.0, R / 2, cls="border-C", stroke="black", width=1.5)
    present = sorted(set(str(v) for v in labels.ravel()), key=list(CLASS_COLORS).index)
    _legend(c, [(name, CLASS_COLORS[name]) for name in present])
    return c.render("Basin classification", comments)
